#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

from .metrics import *
from .generators import *
from .ingest import *
from .experiments import *
from .driver import *
