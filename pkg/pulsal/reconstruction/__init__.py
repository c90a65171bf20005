#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

from .basis import *
from .solver import *
