#!/usr/bin/env python3
"""
EOP Report

Expected online performance curves, policy selection regret and the tabular
offline RL testbed, from the command line.
"""

import sys

from eop_report.app.main import main

if __name__ == "__main__":
    sys.exit(main())
