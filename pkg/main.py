#!/usr/bin/env python
"""
cyclic-mf 命令列入口

使用方式：
    uv run python main.py cluster enumerate --zn 6
    uv run python main.py verify all --max-n 7
"""

import sys

from cli import main

if __name__ == "__main__":
    sys.exit(main())
