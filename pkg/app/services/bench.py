import random
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence

import networkx as nx
from pydantic import BaseModel, ConfigDict

from app.api.error_utilities import DomainError, GenerationError, InvariantError, StructureError
from app.features.clawfree.construction import construct_large_two_regular, threshold
from app.features.exact.tools import brute_force_oracle, max_induced_two_regular
from app.features.families.tools import (
    diamond_necklace,
    fixture,
    random_clawfree_cubic,
    random_cubic_graph,
    random_cubic_multigraph,
    random_graph,
    tightness_graph,
)
from app.features.greedy.tools import graph_bound, greedy_two_regular
from app.features.hardness.tools import (
    embed_independent_set,
    extract_independent_set,
    path_order,
    reduce_independent_set,
)
from app.features.matching.tools import (
    is_perfect,
    maximum_matching,
    perfect_matching_containing,
    tutte_violator,
)
from app.services.graph import Graph, is_two_regular_induced, max_degree
from app.services.logger import setup_logger
from app.services.schemas import BenchReport, BenchRow

logger = setup_logger(__name__)

SUITES = ("fixtures", "oracle", "greedy", "clawfree", "tightness", "matching", "reduction")
ALL = "all"

FIXTURE_VALUES = (
    ("k4", None, 3),
    ("prism", None, 4),
    ("fig5_half_cubic", None, 6),
    ("fig2_two_towers", None, 10),
    ("necklace", 2, 6),
    ("necklace", 3, 9),
    ("complete_bipartite", 4, 4),
)


class BenchSizes(BaseModel):
    """Sample counts of the randomised suites; the defaults are the full acceptance sweep."""
    model_config = ConfigDict(frozen=True)

    oracle_graphs: int = 500
    oracle_max_order: int = 14
    atlas_graphs: Optional[int] = None
    greedy_graphs: int = 200
    cubic_graphs: int = 50
    clawfree_graphs: int = 100
    tightness_max_k: int = 5
    extendable_graphs: int = 100
    tutte_graphs: int = 300
    reduction_random: int = 4


class _Suite:
    def __init__(self, name: str):
        self.name = name
        self.rows: List[BenchRow] = []

    def check(self, check: str, passed: bool, detail: str = ""):
        if not passed:
            logger.warning(f"[{self.name}] {check} failed: {detail}")
        self.rows.append(BenchRow(suite=self.name, check=check, passed=passed, detail=detail))

    def sweep(self, check: str, failures: Sequence[str], total: int):
        # One row per sweep; the detail names the first failure only
        detail = f"{total} cases" if not failures else f"{len(failures)}/{total} failed, first: {failures[0]}"
        self.check(check, not failures, detail)


def _seeds(rng: random.Random, count: int) -> List[int]:
    return [rng.randrange(2 ** 32) for _ in range(count)]


def _fixture_graph(name: str, k: Optional[int]) -> Graph:
    if name == "necklace":
        return diamond_necklace(k)[0]
    return fixture(name, k)


def run_fixtures(suite: _Suite, rng: random.Random, sizes: BenchSizes):
    for name, k, expected in FIXTURE_VALUES:
        label = name if k is None else f"{name}({k})"
        result = max_induced_two_regular(_fixture_graph(name, k))
        suite.check(
            f"c_ind {label} = {expected}",
            result.optimal and result.certificate.size == expected,
            f"got {result.certificate.size}",
        )


def _atlas_graphs(limit: Optional[int]) -> List[Graph]:
    graphs = [Graph.from_networkx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() >= 3 and nx.is_connected(h)]
    return graphs if limit is None else graphs[:limit]


def run_oracle(suite: _Suite, rng: random.Random, sizes: BenchSizes):
    failures = []
    for seed in _seeds(rng, sizes.oracle_graphs):
        local = random.Random(seed)
        n = local.randint(3, sizes.oracle_max_order)
        g = random_graph(n, local.uniform(0.15, 0.6), seed)
        exact, oracle = max_induced_two_regular(g).certificate.size, brute_force_oracle(g)
        if exact != oracle:
            failures.append(f"seed {seed}, n={n}: exact {exact}, oracle {oracle}")
    suite.sweep("exact equals brute force on random graphs", failures, sizes.oracle_graphs)

    atlas = _atlas_graphs(sizes.atlas_graphs)
    failures = []
    for index, g in enumerate(atlas):
        exact, oracle = max_induced_two_regular(g).certificate.size, brute_force_oracle(g)
        if exact != oracle:
            failures.append(f"atlas graph {index}: exact {exact}, oracle {oracle}")
    suite.sweep("exact equals brute force on small connected graphs", failures, len(atlas))


def run_greedy(suite: _Suite, rng: random.Random, sizes: BenchSizes):
    failures = []
    tried = 0
    # graphs with maximum degree below 3 are redrawn until the count is met
    while tried < sizes.greedy_graphs:
        seed = rng.randrange(2 ** 32)
        local = random.Random(seed)
        g = random_graph(local.randint(6, 30), local.uniform(0.1, 0.4), seed)
        if max_degree(g) < 3:
            continue
        tried += 1
        certificate, _ = greedy_two_regular(g)
        if certificate.size < graph_bound(g):
            failures.append(f"seed {seed}: size {certificate.size} < {graph_bound(g)}")
    suite.sweep("greedy meets the degree bound", failures, tried)

    failures = []
    for seed in _seeds(rng, sizes.cubic_graphs):
        n = 2 * random.Random(seed).randint(2, 30)
        certificate, _ = greedy_two_regular(random_cubic_graph(n, seed))
        if not Fraction(certificate.size) > Fraction(n, 4):
            failures.append(f"seed {seed}, n={n}: size {certificate.size}")
    suite.sweep("greedy exceeds n/4 on cubic graphs", failures, sizes.cubic_graphs)


def _clawfree_parameters(local: random.Random):
    while True:
        t, d = 2 * local.randint(0, 10), local.randint(0, 10)
        if t + d and (t or d >= 2):
            return t, d


def run_clawfree(suite: _Suite, rng: random.Random, sizes: BenchSizes):
    failures = []
    for seed in _seeds(rng, sizes.clawfree_graphs):
        t, d = _clawfree_parameters(random.Random(seed))
        try:
            g = random_clawfree_cubic(t, d, seed)
            result = construct_large_two_regular(g)
        except (GenerationError, StructureError, InvariantError) as e:
            failures.append(f"t={t}, d={d}, seed {seed}: {e}")
            continue
        size = result.certificate.size
        if not is_two_regular_induced(g, result.certificate.vertices) or size < threshold(g.n):
            failures.append(f"t={t}, d={d}, seed {seed}: size {size}, needs {threshold(g.n)}")
        elif g.n <= 14 and size > max_induced_two_regular(g).certificate.size:
            failures.append(f"t={t}, d={d}, seed {seed}: size {size} exceeds the optimum")
    suite.sweep("construction beats 13n/20", failures, sizes.clawfree_graphs)


def run_tightness(suite: _Suite, rng: random.Random, sizes: BenchSizes):
    for k in range(1, sizes.tightness_max_k + 1):
        g = tightness_graph(k)
        size = construct_large_two_regular(g).certificate.size
        suite.check(
            f"tightness k={k} reaches {13 * k + 23}",
            g.n == 20 * k + 34 and size >= 13 * k + 23,
            f"n={g.n}, size {size}",
        )


def run_matching(suite: _Suite, rng: random.Random, sizes: BenchSizes):
    failures = []
    for seed in _seeds(rng, sizes.extendable_graphs):
        n = 2 * random.Random(seed).randint(1, 8)
        g = random_cubic_multigraph(n, seed)
        missing = [e for e, _, _ in g.edges if perfect_matching_containing(g, e) is None]
        if missing:
            failures.append(f"seed {seed}, n={n}: edge {missing[0]} is in no perfect matching")
    suite.sweep("cubic multigraphs are 1-extendable", failures, sizes.extendable_graphs)

    failures = []
    for index, seed in enumerate(_seeds(rng, sizes.tutte_graphs)):
        local = random.Random(seed)
        # alternate between cubic multigraphs and sparse simple graphs, which often lack a perfect matching
        if index % 2:
            g = random_graph(local.randint(2, 12), local.uniform(0.15, 0.5), seed).to_multigraph()
        else:
            g = random_cubic_multigraph(2 * local.randint(1, 6), seed)
        perfect = is_perfect(g, maximum_matching(g).edge_ids)
        if perfect != (tutte_violator(g) is None):
            failures.append(f"seed {seed}, n={g.n}: perfect={perfect}")
    suite.sweep("Tutte condition agrees with matching", failures, sizes.tutte_graphs)


def _independent_sets(g: Graph):
    for size in range(g.n + 1):
        for subset in combinations(range(g.n), size):
            if not any(g.has_edge(u, v) for u, v in combinations(subset, 2)):
                yield subset


def run_reduction(suite: _Suite, rng: random.Random, sizes: BenchSizes):
    sources = [("k4", fixture("k4")), ("prism", fixture("prism"))]
    for seed in _seeds(rng, sizes.reduction_random):
        n = 2 * random.Random(seed).randint(3, 5)
        sources.append((f"cubic n={n} seed {seed}", random_cubic_graph(n, seed)))

    for label, g in sources:
        reduction = reduce_independent_set(g)
        h = reduction.target
        shape = h.n == 3 * g.n * g.n and max_degree(h) == 4 and all(
            len(cycle) == path_order(g.n) + 2 for cycle in reduction.cycles
        )
        failures = []
        total = 0
        for independent in _independent_sets(g):
            total += 1
            certificate = embed_independent_set(reduction, independent)
            if certificate.size != 3 * len(independent) * g.n:
                failures.append(f"set {list(independent)}: size {certificate.size}")
            elif extract_independent_set(reduction, certificate) != independent:
                failures.append(f"set {list(independent)}: extraction differs")
        suite.check(f"{label}: target shape", shape, f"n(H)={h.n}, max degree {max_degree(h)}")
        suite.sweep(f"{label}: embed and extract", failures, total)


RUNNERS: Dict[str, Callable[[_Suite, random.Random, BenchSizes], None]] = {
    "fixtures": run_fixtures,
    "oracle": run_oracle,
    "greedy": run_greedy,
    "clawfree": run_clawfree,
    "tightness": run_tightness,
    "matching": run_matching,
    "reduction": run_reduction,
}


def run_bench(suite: str, seed: int, sizes: Optional[BenchSizes] = None) -> BenchReport:
    """
    Runs one acceptance suite, or every suite in a fixed order for "all".

    Each suite draws its graphs from its own generator seeded by `seed`, so a
    suite gives the same rows whether it runs alone or inside "all".
    """
    if suite != ALL and suite not in RUNNERS:
        logger.error(f"Unknown bench suite: {suite}")
        raise DomainError(f"unknown suite '{suite}'; expected one of {list(SUITES) + [ALL]}")

    sizes = sizes or BenchSizes()
    rows: List[BenchRow] = []
    for name in (SUITES if suite == ALL else (suite,)):
        runner = _Suite(name)
        logger.info(f"Running bench suite {name} with seed {seed}")
        RUNNERS[name](runner, random.Random(f"{name}:{seed}"), sizes)
        rows += runner.rows

    return BenchReport(seed=seed, rows=rows, passed=all(row.passed for row in rows))


def format_table(report: BenchReport) -> List[str]:
    width = max((len(row.check) for row in report.rows), default=0)
    lines = [f"{'PASS' if row.passed else 'FAIL'}  {row.suite:<9}  {row.check:<{width}}  {row.detail}" for row in report.rows]
    lines.append(f"{sum(row.passed for row in report.rows)}/{len(report.rows)} checks passed (seed {report.seed})")
    return lines
