#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

from .adder import *
from .closed_form import *
