#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

import sys

from pulsal.core import run_tool_main
from pulsal.harness import PulsalDriver

def main():
    sys.exit(run_tool_main(PulsalDriver))

if __name__ == "__main__":
    main()
