#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

from .error import *
from .driver import *
from .tool import *
from .utils import *
