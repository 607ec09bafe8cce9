#!/usr/bin/env python3
"""
Script para executar a CLI do coopheat
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from coopheat.cli.app import main


if __name__ == '__main__':
    sys.exit(main())
