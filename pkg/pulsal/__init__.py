#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Integrate-and-fire pulse trains: encoding, pulse-domain addition and
reconstruction.
"""

__version__ = "0.1"
