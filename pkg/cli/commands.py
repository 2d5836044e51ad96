"""
子命令實作

每個處理函式接收 argparse.Namespace、把結果寫到 stdout 或 --out，並回傳 exit code：
0 成功，1 驗證失敗；領域錯誤由 cli.main 轉成 exit 2。
"""

import argparse
import json
import random
import sys
from collections.abc import Callable
from itertools import combinations
from typing import Any

from pydantic import BaseModel

from core.config import settings
from core.errors import InvalidInputError
from models.cluster import QuiverModel
from models.poset import to_element
from repositories import MFObjectRepository, MorphismRepository, PosetRepository
from services.cyclic_poset_service import (
    AdmissibleAutomorphism,
    CyclicPoset,
    CyclicPosetService,
    build_zm_star_z,
    build_zn,
)
from services.export_service import ExportService
from services.frobenius_service import FrobeniusService
from services.linearization_service import LinearizationService
from services.mcluster_service import STANDARD, MArc, MClusterService, example_m5, fuss_catalan
from services.stable_cluster_service import Arc, Cluster, StableClusterService
from services.verification_service import Bounds, VerificationService

Handler = Callable[[argparse.Namespace], int]


# ----------------------------------------------------------------------
# 共用工具
# ----------------------------------------------------------------------

def _dump(payload: Any) -> str:
    if isinstance(payload, BaseModel):
        return payload.model_dump_json(indent=2) + "\n"
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out is not None:
        ExportService.write(text, args.out)
    else:
        sys.stdout.write(text)


def _require_json(args: argparse.Namespace) -> None:
    if args.format != "json":
        raise InvalidInputError(f"this command only writes json, not {args.format}", witness=args.format)


def _pair(text: str) -> tuple[Any, Any]:
    """'1,3' 或 '[1,0],[2,0]' → 兩個元素"""
    try:
        values = json.loads(f"[{text}]")
    except json.JSONDecodeError:
        raise InvalidInputError(f"cannot parse endpoints {text!r}", witness=text) from None
    if len(values) != 2:
        raise InvalidInputError(f"expected two endpoints, got {text!r}", witness=text)
    return to_element(values[0]), to_element(values[1])


def _lambda_pair(text: str) -> tuple[int, int]:
    a, b = _pair(text)
    if not (isinstance(a, int) and isinstance(b, int)):
        raise InvalidInputError(f"λ coordinates must be integers, got {text!r}", witness=text)
    return a, b


def _parts(text: str) -> list[str]:
    return [part for part in text.split(";") if part.strip()]


def _load_poset(args: argparse.Namespace) -> tuple[CyclicPoset, AdmissibleAutomorphism | None]:
    if args.zn is not None:
        return build_zn(args.zn)
    if args.poset is not None:
        return PosetRepository().load(args.poset)
    if args.m is not None:
        if args.window is None:
            raise InvalidInputError("--m needs --window LO:HI (levels)", witness=args.m)
        return build_zm_star_z(args.m, *args.window)
    raise InvalidInputError("choose a poset with --zn, --poset or --m/--window")


def _stable_service(args: argparse.Namespace) -> StableClusterService:
    poset, phi = _load_poset(args)
    if phi is None:
        raise InvalidInputError(f"{poset.name} has no successor automorphism", witness=poset.name)
    return StableClusterService(poset, phi, prime=settings.PRIME)


def _cluster(service: StableClusterService, text: str) -> Cluster:
    return Cluster(service.arc(*_pair(part)) for part in _parts(text))


def _require_cluster(service: StableClusterService, cluster: Cluster) -> None:
    if cluster not in set(service.enumerate_clusters()):
        raise InvalidInputError("arcs do not form a cluster", witness=[a.to_list() for a in sorted(cluster)])


def _mcluster(service: MClusterService, text: str) -> list[MArc]:
    return sorted(service.marc(*_lambda_pair(part)) for part in _parts(text))


# ----------------------------------------------------------------------
# poset
# ----------------------------------------------------------------------

def poset_build(args: argparse.Namespace) -> int:
    _require_json(args)
    poset, _ = _load_poset(args)
    _emit(args, _dump(PosetRepository().to_table(poset)))
    return 0


def poset_verify(args: argparse.Namespace) -> int:
    _require_json(args)
    poset, phi = _load_poset(args)
    service = CyclicPosetService()
    report = service.verify_cocycle(poset)
    if not report.ok:
        raise InvalidInputError(f"{poset.name} violates the cocycle axioms", witness=report.violations)
    if phi is not None:
        service.require_admissible(poset, phi)
    _emit(args, _dump(report))
    return 0


# ----------------------------------------------------------------------
# linearize / mf
# ----------------------------------------------------------------------

def linearize_compose(args: argparse.Namespace) -> int:
    _require_json(args)
    poset, phi = _load_poset(args)
    lin = LinearizationService(poset, phi=phi)
    repository = MorphismRepository()
    g = lin.from_model(repository.load(args.g))
    f = lin.from_model(repository.load(args.f))
    _emit(args, _dump(lin.to_model(lin.compose(g, f))))
    return 0


def _mf_object(args: argparse.Namespace):
    poset, phi = _load_poset(args)
    frobenius = FrobeniusService(poset, phi)
    return frobenius, frobenius.from_model(MFObjectRepository().load(args.object))


def mf_validate(args: argparse.Namespace) -> int:
    _require_json(args)
    frobenius, obj = _mf_object(args)
    report = frobenius.validate(obj, twisted=frobenius.phi is not None and not args.untwisted)
    _emit(args, _dump(report))
    return 0 if report.ok else 1


def mf_decompose(args: argparse.Namespace) -> int:
    _require_json(args)
    frobenius, obj = _mf_object(args)
    _emit(args, _dump(frobenius.decomposition_model(frobenius.decompose(obj))))
    return 0


# ----------------------------------------------------------------------
# stable / cluster
# ----------------------------------------------------------------------

def stable_hom(args: argparse.Namespace) -> int:
    _require_json(args)
    service = _stable_service(args)
    X, Y = service.arc(*_pair(args.x)), service.arc(*_pair(args.y))
    payload: dict[str, Any] = {
        "X": X.label(),
        "Y": Y.label(),
        "hom": service.stable_hom_dim(X, Y),
        "ext1": service.ext_dim(X, Y),
        "ext1_reverse": service.ext_dim(Y, X),
    }
    if args.oracle:
        payload["oracle_hom"] = service.stable_hom_oracle(X, Y)
    _emit(args, _dump(payload))
    return 0


def cluster_enumerate(args: argparse.Namespace) -> int:
    _require_json(args)
    service = _stable_service(args)
    clusters = service.enumerate_clusters()
    payload = {
        "poset": service.poset.name,
        "indecomposables": len(service.arcs()),
        "count": len(clusters),
        "clusters": [service.cluster_model(c).arcs for c in clusters],
    }
    _emit(args, _dump(payload))
    return 0


def _step(old: Arc, new: Arc) -> dict[str, Any]:
    return {"old": old.to_list(), "new": new.to_list()}


def cluster_mutate(args: argparse.Namespace) -> int:
    _require_json(args)
    service = _stable_service(args)
    cluster = _cluster(service, args.cluster)
    _require_cluster(service, cluster)
    steps = []
    if args.arc is not None:
        T = service.arc(*_pair(args.arc))
        steps.append(_step(T, service.mutate(T, cluster).new))
        cluster = service.mutated_cluster(T, cluster)
    else:
        rng = random.Random(settings.DEFAULT_SEED)
        for _ in range(args.steps):
            T = rng.choice(sorted(cluster))
            steps.append(_step(T, service.mutate(T, cluster).new))
            cluster = service.mutated_cluster(T, cluster)
    payload = {"steps": steps, "cluster": service.cluster_model(cluster).arcs}
    _emit(args, _dump(payload))
    return 0


def cluster_quiver(args: argparse.Namespace) -> int:
    service = _stable_service(args)
    cluster = _cluster(service, args.cluster)
    if cluster:
        _require_cluster(service, cluster)
        model = service.quiver_model(cluster)
    else:
        model = QuiverModel(vertices=[], edges=[])
    _emit(args, ExportService().quiver(model, args.format))
    return 0


# ----------------------------------------------------------------------
# mcluster
# ----------------------------------------------------------------------

def mcluster_count(args: argparse.Namespace) -> int:
    _require_json(args)
    service = MClusterService(args.m)
    angulations = service.enumerate_angulations(args.s)
    payload: dict[str, Any] = {
        "m": args.m,
        "s": args.s,
        "count": len(angulations),
        "fuss_catalan": fuss_catalan(args.m, args.s),
    }
    if args.list:
        payload["angulations"] = [[list(chord) for chord in sorted(a)] for a in angulations]
    _emit(args, _dump(payload))
    return 0


def mcluster_mutate(args: argparse.Namespace) -> int:
    _require_json(args)
    service = MClusterService(args.m)
    arcs = _mcluster(service, args.cluster)
    service.cluster_to_angulation(arcs, args.s)
    T = service.marc(*_lambda_pair(args.arc))
    chain = service.mutation_partners(T, arcs, args.s)
    _emit(args, _dump(service.mutation_chain_model(chain)))
    return 0


def mcluster_check(args: argparse.Namespace) -> int:
    """標準叢（給 --s）畫剖分；含非標準物件時畫帶狀圖"""
    service = MClusterService(args.m)
    exporter = ExportService()
    arcs = _mcluster(service, args.cluster)
    clashes = [[X.to_list(), Y.to_list()] for X, Y in combinations(arcs, 2) if not service.compatible_rigid(X, Y)]
    if args.s is not None and all(a.kind == STANDARD for a in arcs):
        if clashes:
            raise InvalidInputError("standard objects cross", witness=clashes)
        model = service.cluster_to_angulation(arcs, args.s)
        window, maximal = model.window, True

        def draw() -> str:
            return exporter.angulation(model, args.format)
    else:
        window = list(args.window or service.outer_window(arcs))
        maximal = not clashes and service.is_maximal(arcs, tuple(window))

        def draw() -> str:
            return exporter.strip(service, arcs, args.format)

    if args.format == "json":
        text = _dump({"m": args.m, "window": window, "compatible": not clashes, "maximal": maximal, "clashes": clashes})
    else:
        text = draw()
    _emit(args, text)
    return 0 if not clashes and maximal else 1


def mcluster_example(args: argparse.Namespace) -> int:
    example = example_m5()
    if args.format == "json":
        payload = {
            "compatible": example.compatible,
            "maximal": example.maximal,
            "report": example.service.central_report(example.stats).model_dump(),
        }
        text = _dump(payload)
    else:
        text = ExportService().strip(example.service, example.config, args.format)
    _emit(args, text)
    return 0 if example.compatible and example.maximal else 1


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def verify(args: argparse.Namespace) -> int:
    """逐項印出結果與耗時；--out 另存 SuiteReport JSON"""
    bounds = Bounds(
        max_n=args.max_n,
        ms=args.m,
        max_s=args.max_s,
        seed=settings.DEFAULT_SEED,
        progress=args.progress,
    )
    report = VerificationService(bounds, fault=args.inject_fault).run(args.suite)
    for result in report.results:
        status = "pass" if result.passed else "FAIL"
        sys.stdout.write(f"{result.name:<26} {status}  {result.seconds:8.2f}s  {result.detail}\n")
    sys.stdout.write(f"suite {report.suite}: {'pass' if report.passed else 'FAIL'}\n")
    if args.out is not None:
        ExportService.write(_dump(report), args.out)
    return 0 if report.passed else 1


HANDLERS: dict[str, Handler] = {
    "poset_build": poset_build,
    "poset_verify": poset_verify,
    "linearize_compose": linearize_compose,
    "mf_validate": mf_validate,
    "mf_decompose": mf_decompose,
    "stable_hom": stable_hom,
    "cluster_enumerate": cluster_enumerate,
    "cluster_mutate": cluster_mutate,
    "cluster_quiver": cluster_quiver,
    "mcluster_count": mcluster_count,
    "mcluster_mutate": mcluster_mutate,
    "mcluster_check": mcluster_check,
    "mcluster_example": mcluster_example,
    "verify": verify,
}
