#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

from .signal import *
from .ifc import *
