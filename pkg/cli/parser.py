"""
命令列參數定義

使用方式：
    cyclic-mf cluster enumerate --zn 6
    cyclic-mf mcluster count --m 3 --s 2
    cyclic-mf verify all --max-n 7 --m 3,4,5 --max-s 3
"""

import argparse
from pathlib import Path

from services.export_service import FORMATS
from services.verification_service import FAULTS, SUITES


def window(text: str) -> tuple[int, int]:
    """LO:HI → (lo, hi)；負數請寫成 --window=-10:13"""
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"window {text!r} is empty")
    return lo, hi


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(parser: argparse.ArgumentParser) -> None:
    """每個子命令都接受的旗標"""
    parser.add_argument("--precision", type=int, help="純量環精度 N（預設讀取設定）")
    parser.add_argument("--prime", type=int, help="係數體 F_p 的 p（預設讀取設定）")
    parser.add_argument("--seed", type=int, help="隨機種子（預設讀取設定）")
    parser.add_argument("--format", choices=FORMATS, default="json", help="輸出格式 (預設: json)")
    parser.add_argument("--out", type=Path, help="輸出檔案；未指定時寫到 stdout")
    parser.add_argument("--verbose", "-v", action="store_true", help="顯示 DEBUG 日誌")


def _poset_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--zn", type=int, help="循環序集合 Z_n")
    group.add_argument("--poset", "--file", dest="poset", type=Path, help="poset JSON 檔（table 或 builder）")
    parser.add_argument("--m", type=int, help="Z_m∗ℤ 的 m（搭配 --window 的層級範圍）")
    parser.add_argument("--window", type=window, help="層級或 λ 窗口 LO:HI")


def _add(sub, name: str, help_text: str, handler: str, poset: bool = False) -> argparse.ArgumentParser:
    parser = sub.add_parser(name, help=help_text, description=help_text)
    _common(parser)
    if poset:
        _poset_source(parser)
    parser.set_defaults(handler=handler)
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclic-mf",
        description="循環偏序集、矩陣分解 Frobenius 範疇與 (m-)叢範疇的計算工具",
    )
    groups = parser.add_subparsers(dest="group", required=True)

    # poset
    poset = groups.add_parser("poset", help="建構與驗證循環偏序集").add_subparsers(dest="command", required=True)
    _add(poset, "build", "以建構器產生 poset 並輸出表格 JSON", "poset_build", poset=True)
    _add(poset, "verify", "檢查餘循環公理與 φ 的容許性", "poset_verify", poset=True)

    # linearize
    linearize = groups.add_parser("linearize", help="線性化 𝒫(X)").add_subparsers(dest="command", required=True)
    compose = _add(linearize, "compose", "合成兩個態射 g∘f", "linearize_compose", poset=True)
    compose.add_argument("--g", type=Path, required=True, help="態射 g 的 JSON")
    compose.add_argument("--f", type=Path, required=True, help="態射 f 的 JSON")

    # mf
    mf = groups.add_parser("mf", help="矩陣分解 MF_φ(X)").add_subparsers(dest="command", required=True)
    validate = _add(mf, "validate", "檢查 d² = t·id 與 η-分解條件", "mf_validate", poset=True)
    validate.add_argument("--object", type=Path, required=True, help="MFObject JSON")
    validate.add_argument("--untwisted", action="store_true", help="不檢查 η-分解條件")
    decompose = _add(mf, "decompose", "Krull–Schmidt 分解為 ⊕E(x,y)", "mf_decompose", poset=True)
    decompose.add_argument("--object", type=Path, required=True, help="MFObject JSON")

    # stable
    stable = groups.add_parser("stable", help="穩定範疇 C_φ(Z)").add_subparsers(dest="command", required=True)
    hom = _add(stable, "hom", "穩定 Hom 與 Ext 的維度", "stable_hom", poset=True)
    hom.add_argument("--x", required=True, help="X 的端點，例如 1,3")
    hom.add_argument("--y", required=True, help="Y 的端點，例如 2,5")
    hom.add_argument("--oracle", action="store_true", help="同時以矩陣預言機計算")

    # cluster
    cluster = groups.add_parser("cluster", help="C_φ(Z_n) 的叢").add_subparsers(dest="command", required=True)
    _add(cluster, "enumerate", "列出所有叢", "cluster_enumerate", poset=True)
    mutate = _add(cluster, "mutate", "突變；未指定 --arc 時做隨機突變路徑", "cluster_mutate", poset=True)
    mutate.add_argument("--cluster", required=True, help="弧列表，例如 '1,3;1,4;1,5'")
    mutate.add_argument("--arc", help="要突變的弧")
    mutate.add_argument("--steps", type=int, default=5, help="隨機路徑步數 (預設: 5)")
    quiver = _add(cluster, "quiver", "輸出叢的箭圖", "cluster_quiver", poset=True)
    quiver.add_argument("--cluster", required=True, help="弧列表，例如 '1,3;1,4;1,5'")

    # mcluster
    mcluster = groups.add_parser("mcluster", help="A∞ 型 m-叢範疇").add_subparsers(dest="command", required=True)
    count = _add(mcluster, "count", "(ms+2)-邊形的 (m+2)-剖分數", "mcluster_count")
    count.add_argument("--m", type=int, required=True)
    count.add_argument("--s", type=int, required=True)
    count.add_argument("--list", action="store_true", help="同時列出所有剖分")
    mmutate = _add(mcluster, "mutate", "標準 m-叢的突變鏈 T_1* … T_m*", "mcluster_mutate")
    mmutate.add_argument("--m", type=int, required=True)
    mmutate.add_argument("--s", type=int, required=True)
    mmutate.add_argument("--cluster", required=True, help="λ 弦列表，例如 '1,4;1,7'")
    mmutate.add_argument("--arc", required=True, help="要突變的 λ 弦")
    check = _add(mcluster, "check", "相容性、極大性與剖分／帶狀圖", "mcluster_check")
    check.add_argument("--m", type=int, required=True)
    check.add_argument("--cluster", required=True, help="λ 弦列表")
    check.add_argument("--s", type=int, help="標準叢所在的 (ms+2)-邊形")
    check.add_argument("--window", type=window, help="極大性檢查的 λ 窗口")
    _add(mcluster, "example-m5", "m = 5 的非標準叢範例與中央多邊形", "mcluster_example")

    # verify
    verify = _add(groups, "verify", "執行驗收套件", "verify")
    verify.add_argument("suite", nargs="?", default="all", choices=sorted(SUITES), help="套件名稱 (預設: all)")
    verify.add_argument("--max-n", type=int, default=8, help="Z_n 的最大 n (預設: 8)")
    verify.add_argument("--m", type=int_list, default=(3, 4, 5), help="m 值列表 (預設: 3,4,5)")
    verify.add_argument("--max-s", type=int, default=3, help="最大 s (預設: 3)")
    verify.add_argument("--inject-fault", choices=FAULTS, help="刻意注入錯誤以測試套件本身")
    verify.add_argument("--progress", action="store_true", help="顯示 tqdm 進度條")

    return parser
