# CLI Module
"""命令列介面層"""

import json
import logging
import sys
from collections.abc import Sequence

from cli.commands import HANDLERS
from cli.parser import build_parser
from core.config import settings
from core.errors import CyclicMFError
from core.logging import setup_logging

# 旗標 → 設定欄位
OVERRIDES = {"precision": "PRECISION", "prime": "PRIME", "seed": "DEFAULT_SEED"}


def main(argv: Sequence[str] | None = None) -> int:
    """執行一個子命令並回傳 exit code（0 成功、1 驗證失敗、2 輸入錯誤）"""
    args = build_parser().parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else settings.log_level_value)

    saved = {name: getattr(settings, name) for name in OVERRIDES.values()}
    for flag, name in OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(settings, name, value)
    try:
        return HANDLERS[args.handler](args)
    except CyclicMFError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), ensure_ascii=False, default=str) + "\n")
        return 2
    finally:
        for name, value in saved.items():
            setattr(settings, name, value)


__all__ = ["main", "build_parser"]
