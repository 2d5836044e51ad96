"""
驗收套件服務

十項驗收準則逐項執行並計時；每項回傳 CriterionResult。
fault 參數可刻意注入錯誤（crossing / cocycle / decompose）以自我測試。
"""

import random
import time
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import combinations, product

from tqdm import tqdm

from core.config import settings
from core.errors import CyclicMFError, InvalidInputError
from core.logging import get_logger
from models.morphism import EDescriptor
from models.report import CriterionResult, SuiteReport
from services.cyclic_poset_service import (
    CyclicPoset,
    CyclicPosetService,
    build,
    build_product,
    build_star,
    build_zn,
)
from services.frobenius_service import FrobeniusService, iso_key
from services.mcluster_service import (
    NONSTANDARD,
    STANDARD,
    MClusterService,
    dissections,
    example_m5,
    fuss_catalan,
)
from services.stable_cluster_service import (
    Arc,
    StableClusterService,
    catalan,
    polygon_triangulations,
)

logger = get_logger("verification")

FAULTS = ("crossing", "cocycle", "decompose")

SUITES: dict[str, tuple[int, ...]] = {
    "all": tuple(range(1, 11)),
    "cyclic_poset": (1,),
    "frobenius": (6,),
    "stable_cluster": (2, 3, 4, 5, 10),
    "mcluster": (7, 8, 9, 10),
}


@dataclass
class Bounds:
    """套件的規模上限"""

    max_n: int = 8
    ms: tuple[int, ...] = (3, 4, 5)
    max_s: int = 3
    seed: int = field(default_factory=lambda: settings.DEFAULT_SEED)
    progress: bool = False


class _CrossingFault(StableClusterService):
    """故意失效的交錯判定：任何兩弧都不交錯"""

    def crosses(self, X: Arc, Y: Arc) -> bool:
        return False


class VerificationService:
    """依名稱執行驗收準則"""

    def __init__(self, bounds: Bounds | None = None, fault: str | None = None):
        if fault is not None and fault not in FAULTS:
            raise InvalidInputError(f"unknown fault {fault!r}; expected one of {', '.join(FAULTS)}", witness=fault)
        self.bounds = bounds or Bounds()
        self.fault = fault
        self._criteria: dict[int, tuple[str, Callable[[], str]]] = {
            1: ("cocycle-algebra", self.check_cocycles),
            2: ("lemma-vs-oracle-hom", self.check_hom_oracle),
            3: ("two-calabi-yau", self.check_two_cy),
            4: ("cluster-counts", self.check_cluster_counts),
            5: ("mutation", self.check_mutation),
            6: ("krull-schmidt", self.check_krull_schmidt),
            7: ("m-cluster-bijection", self.check_angulations),
            8: ("m-calabi-yau", self.check_m_cy),
            9: ("nonstandard-example", self.check_example_m5),
            10: ("ar-structure", self.check_ar_structure),
        }

    def run(self, suite: str = "all") -> SuiteReport:
        if suite not in SUITES:
            raise InvalidInputError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}", witness=suite)
        report = SuiteReport(suite=suite)
        for number in SUITES[suite]:
            name, check = self._criteria[number]
            start = time.perf_counter()
            try:
                detail = check()
                passed = True
            except AssertionError as exc:
                detail, passed = str(exc), False
            except CyclicMFError as exc:
                detail, passed = f"{exc.code}: {exc.message}", False
            seconds = time.perf_counter() - start
            logger.info("[%2d] %-22s %s (%.2fs) %s", number, name, "pass" if passed else "FAIL", seconds, detail)
            report.results.append(CriterionResult(name=f"{number}:{name}", passed=passed, detail=detail, seconds=seconds))
        return report

    def _iter(self, items, desc: str):
        return tqdm(items, desc=desc, leave=False, disable=not self.bounds.progress)

    def _zn(self, n: int) -> StableClusterService:
        poset, phi = build_zn(n)
        cls = _CrossingFault if self.fault == "crossing" else StableClusterService
        return cls(poset, phi)

    # ------------------------------------------------------------------
    # 1. 餘循環
    # ------------------------------------------------------------------

    def check_cocycles(self) -> str:
        service = CyclicPosetService()
        posets: list[CyclicPoset] = [build_zn(n)[0] for n in range(3, self.bounds.max_n + 1)]
        z3, _ = build_zn(3)
        posets.append(build_product(z3, z3))
        posets.append(build_star(z3, 0, 2))
        posets.append(build("ZmStarZ", {"m": 4, "lo": -1, "hi": 1})[0])
        z6, plus = build_zn(6)
        posets.append(service.frobenius_poset(z6, plus).x_poset)
        for poset in self._iter(posets, "builders"):
            report = service.verify_cocycle(poset)
            assert report.ok, f"{poset.name}: {report.violations[:1]}"

        rng = random.Random(self.bounds.seed)
        trials = settings.RANDOM_COCYCLE_TRIALS
        for trial in self._iter(range(trials), "random cocycles"):
            poset = service.random_distance_poset(rng.randint(2, 6), rng)
            if self.fault == "cocycle" and trial == 0:
                table = {t: poset.c(*t) for t in product(poset.elements, repeat=3)}
                x, y = poset.elements[:2]
                table[(x, x, y)] += 1
                poset = CyclicPoset(poset.elements, cocycle_table=table, name="corrupted")
            report = service.verify_cocycle(poset)
            assert report.ok, f"random trial {trial}: {report.violations[:1]}"

        for n in range(3, self.bounds.max_n + 1):
            poset = build_zn(n)[0]
            recovered = service.recover_cocycle_from_order(poset)
            assert all(recovered[t] == poset.c(*t) for t in recovered), f"Z{n}: cocycle↔covering roundtrip"
        return f"{len(posets)} builders, {trials} random cocycles, roundtrip n≤{self.bounds.max_n}"

    # ------------------------------------------------------------------
    # 2–5. 離散穩定叢範疇
    # ------------------------------------------------------------------

    def check_hom_oracle(self) -> str:
        pairs = 0
        for n in range(4, min(7, self.bounds.max_n) + 1):
            service = self._zn(n)
            arcs = service.arcs()
            for X in self._iter(arcs, f"Z{n} oracle"):
                for Y in arcs:
                    lemma, oracle = service.stable_hom_dim(X, Y), service.stable_hom_oracle(X, Y)
                    assert lemma == oracle, f"Z{n}: Hom({X.label()},{Y.label()}) lemma {lemma} ≠ oracle {oracle}"
                    pairs += 1
        return f"{pairs} pairs agree"

    def check_two_cy(self) -> str:
        pairs = 0
        for n in range(4, self.bounds.max_n + 1):
            service = self._zn(n)
            arcs = service.arcs()
            for X in arcs:
                for Y in arcs:
                    assert service.ext_dim(X, Y) == service.ext_dim(Y, X), f"Z{n}: Ext¹ asymmetry at {X.label()}, {Y.label()}"
                    pairs += 1
        return f"{pairs} pairs symmetric"

    def check_cluster_counts(self) -> str:
        counts = []
        for n in range(4, self.bounds.max_n + 1):
            service = self._zn(n)
            clusters = service.enumerate_clusters()
            independent = polygon_triangulations(list(service.poset.elements))
            expected = catalan(n - 2)
            assert len(clusters) == expected == len(independent), (
                f"Z{n}: {len(clusters)} clusters, {len(independent)} triangulations, Catalan {expected}"
            )
            as_chords = {frozenset((a.x0, a.x1) for a in cluster) for cluster in clusters}
            assert as_chords == set(independent), f"Z{n}: clusters differ from triangulations"
            counts.append(len(clusters))
        return f"counts {counts}"

    def check_mutation(self) -> str:
        checked = 0
        for n in range(4, min(7, self.bounds.max_n) + 1):
            report = self._zn(n).verify_cluster_axioms()
            assert report.ok, f"Z{n}: {report.violations[:2]}"
            checked += report.checked
        return f"{checked} (cluster, arc) pairs"

    # ------------------------------------------------------------------
    # 6. Krull–Schmidt
    # ------------------------------------------------------------------

    def check_krull_schmidt(self) -> str:
        poset, phi = build_zn(6)
        service = FrobeniusService(poset, phi)
        rng = random.Random(self.bounds.seed)
        pairs = [(x, y) for x, y in combinations(poset.elements, 2)]
        trials = settings.KS_TRIALS
        for trial in self._iter(range(trials), "decompose"):
            chosen = [EDescriptor(x=x, y=y) for x, y in rng.sample(pairs, rng.randint(1, 3))]
            obj = service.assemble(chosen)
            U, U_inv = service.random_base_change(obj.V, rng)
            result = service.decompose(service.conjugate(obj, U, U_inv))
            found = list(result.summands)
            if self.fault == "decompose" and trial == 0:
                found = found[:-1]
            expected = Counter(iso_key(e, poset) for e in chosen)
            recovered = Counter(iso_key(e, poset) for e in found)
            assert expected == recovered, f"trial {trial}: expected {sorted(expected)}, got {sorted(recovered)}"
        return f"{trials}/{trials} trials recovered"

    # ------------------------------------------------------------------
    # 7–10. m-叢範疇
    # ------------------------------------------------------------------

    def check_angulations(self) -> str:
        counts = {}
        for m in self.bounds.ms:
            service = MClusterService(m)
            for s in range(1, self.bounds.max_s + 1):
                clusters = service.enumerate_angulations(s)
                vertices = service.window_vertices(s)
                independent = dissections(vertices, m)
                expected = fuss_catalan(m, s)
                assert len(clusters) == expected == len(independent), (
                    f"m={m} s={s}: {len(clusters)} clusters, {len(independent)} dissections, Fuss–Catalan {expected}"
                )
                assert set(clusters) == set(independent), f"m={m} s={s}: clusters differ from dissections"
                for cluster in clusters:
                    arcs = sorted(service.marc(a, b) for a, b in cluster)
                    model = service.cluster_to_angulation(arcs, s)
                    assert service.angulation_to_cluster(model) == arcs, f"m={m} s={s}: roundtrip failed"
                counts[(m, s)] = len(clusters)
        return ", ".join(f"m={m},s={s}:{n}" for (m, s), n in counts.items())

    def check_m_cy(self) -> str:
        rng = random.Random(self.bounds.seed)
        samples, per_kind = settings.CY_SAMPLES, settings.CY_ORACLE_PAIRS
        oracle_checked = mixed_checked = 0
        for m in self.bounds.ms:
            service = MClusterService(m)
            lo, hi = 0, 3 * m
            window = (lo - m, hi)
            rigid = service.rigid_objects(lo, hi)
            standard = [a for a in rigid if a.kind == STANDARD]
            for _ in self._iter(range(samples), f"m={m} shift"):
                X, Y = rng.choice(standard), rng.choice(standard)
                for k in range(1, m + 1):
                    assert service.ext_k_m(X, Y, k) == service.ext_floor(X, Y, k), (
                        f"m={m}: shift and floor computations differ on Ext^{k}({X.key()};{Y.key()})"
                    )

            pairs = list(combinations(rigid, 2))
            mixed = [(X, Y) for X, Y in pairs if NONSTANDARD in (X.kind, Y.kind)]
            plain = [(X, Y) for X, Y in pairs if X.kind == Y.kind == STANDARD]
            chosen = rng.sample(mixed, min(per_kind, len(mixed))) + rng.sample(plain, min(per_kind, len(plain)))
            for X, Y in self._iter(chosen, f"m={m} oracle"):
                pair = f"m={m}: ({X.key()};{Y.key()})"
                forward = [service.oracle_ext(X, Y, k, window) for k in range(1, m + 1)]
                backward = [service.oracle_ext(Y, X, k, window) for k in range(1, m + 1)]
                expected = service.compatible_rigid(X, Y)
                assert expected == (not any(forward) and not any(backward)), (
                    f"{pair} compatible_rigid {expected}, oracle Ext {forward} / {backward}"
                )
                if X.kind == Y.kind == STANDARD:
                    shifted = [service.ext_k_m(X, Y, k) for k in range(1, m + 1)]
                    assert shifted == forward, f"{pair} shift Ext {shifted} ≠ oracle {forward}"
                    assert forward == backward[::-1], f"{pair} oracle Ext {forward} breaks (m+1)-CY against {backward}"
                else:
                    mixed_checked += 1
                oracle_checked += 1
        return (
            f"{samples} shift/floor pairs per m, {oracle_checked} oracle pairs "
            f"({mixed_checked} with a nonstandard object)"
        )

    def check_example_m5(self) -> str:
        example = example_m5()
        service, stats = example.service, example.stats
        m = service.m
        assert example.compatible, "configuration is not pairwise compatible"
        assert example.maximal, "configuration is not maximal on its window"
        assert stats.sides == 2 * m - 2, f"central face has {stats.sides} sides"
        assert all(len(f) == m + 2 for f in stats.faces if f != stats.central), "a non-central face is not a 7-gon"
        central = {a: stats.mutation_counts[a] for a in stats.central_objects}
        others = {a: n for a, n in stats.mutation_counts.items() if a not in central}
        assert central and all(n == 2 * m - 2 for n in central.values()), f"central counts {central}"
        assert others and all(n == m for n in others.values()), f"non-central counts {others}"
        return (
            f"central {stats.sides}-gon, central counts {sorted(central.values())} "
            f"(exhaustive 2m−2 = {2 * m - 2}, not 3m−6 = {3 * m - 6}), others {sorted(others.values())}"
        )

    def check_ar_structure(self) -> str:
        service = self._zn(6)
        for X in service.arcs():
            violations = service.verify_almost_split(X)
            assert not violations, f"almost split at {X.label()}: {violations[:1]}"
            violations = service.verify_almost_split(X, use_oracle=True)
            assert not violations, f"almost split at {X.label()} fails on the oracle: {violations[:1]}"
        report = MClusterService(5).project_to_Zm()
        assert report.ok, f"projection report {report.model_dump()}"
        kinds = Counter(c.kind for c in report.classes)
        return f"Z6 almost split ok (lemma and oracle); {report.zigzag_classes} classes {dict(kinds)}"
