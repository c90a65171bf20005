#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

from .model import *
from .ops import *
from .parser import *
