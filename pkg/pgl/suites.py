"""Named verification suites run by ``pgl verify``.

Each suite recomputes a family of exact identities and inequalities on small
groups and reports one :class:`CheckResult` per case. A suite never stops at the
first failure; budget refusals propagate to the caller.
"""

import logging
from collections.abc import Callable, Iterator

from pydantic import BaseModel, Field

from pgl.errors import CheckFailed, InvalidInput
from pgl.extensions import (Presentation, abelian_extension_chain,
                            abelian_minimal_extensions,
                            coupling_fiber_bound_check,
                            generation_bound_check, kernel_is_minimal_normal,
                            presentation_bound_check, semidirect_EH,
                            semidirect_product_generators_check,
                            subgroup_class, t_map)
from pgl.ffalg import field_make
from pgl.freegrowth import (burnside_class_count, free_bound_check,
                            gl_order, gl_order_exhaustive, parabolic_order,
                            parabolic_order_exhaustive, tuple_census)
from pgl.groups import all_subgroups, cyclic, simple_group, symmetric
from pgl.modrep import (brauer_check, galois_orbits, product_convolution_check,
                        r_counts, simple_modules)
from pgl.probgen import (exact_gen_probability, exhaustive_gen_probability,
                         ideal_census, independence_check,
                         monte_carlo_gen_probability, pfr_sum_bound_check,
                         stable_lattice, stable_to_extension_map)
from pgl.specs import parse_group, parse_surjection

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    """Outcome of one case.

    :ivar suite: Suite name.
    :ivar name: Case name.
    :ivar ref: The statement being checked.
    :ivar passed: Whether the case holds.
    :ivar detail: The computed quantities.
    """

    suite: str = Field(description="Suite name.")
    name: str = Field(description="Case name.")
    ref: str = Field(description="The statement being checked.")
    passed: bool = Field(description="Whether the case holds.")
    detail: str = Field(description="The computed quantities.")


class SuiteReport(BaseModel):
    suite: str = Field(description="Suite name.")
    checks: list[CheckResult] = Field(description="One entry per case.")

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _result(suite: str, name: str, ref: str, passed: bool, detail: str) -> CheckResult:
    if not passed:
        logger.warning("%s/%s failed: %s", suite, name, detail)
    return CheckResult(suite=suite, name=name, ref=ref, passed=bool(passed), detail=detail)


def _guarded(suite: str, name: str, ref: str, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        passed, detail = body()
    except CheckFailed as exc:
        passed, detail = False, str(exc)
    return _result(suite, name, ref, passed, detail)


GL_REF = "|GL_n(F_q)| = q^(n^2) prod_i (1 - q^-i) and |P(k,n-k)| = |GL_k| |GL_(n-k)| q^(k(n-k))"


def order_formulas() -> Iterator[CheckResult]:
    for q in (2, 3, 4, 5, 7, 8, 9):
        for n in (1, 2, 3):
            if q ** (n * n) > 10**6:
                continue
            exact = gl_order(n, q)
            yield _guarded(
                "order-formulas",
                f"GL_{n}(F_{q})",
                GL_REF,
                lambda n=n, q=q, exact=exact: (
                    exact == gl_order_exhaustive(n, q),
                    f"formula {exact}",
                ),
            )
        for n1, n2 in ((1, 1), (1, 2), (2, 1)):
            if q ** ((n1 + n2) ** 2) > 10**6:
                continue
            exact = parabolic_order(n1, n2, q)
            yield _guarded(
                "order-formulas",
                f"P({n1},{n2},F_{q})",
                GL_REF,
                lambda n1=n1, n2=n2, q=q, exact=exact: (
                    exact == parabolic_order_exhaustive(n1, n2, q),
                    f"formula {exact}",
                ),
            )


def free_bounds() -> Iterator[CheckResult]:
    cases = [(2, 2, 2), (2, 2, 3), (2, 3, 2)] + [(2, 1, p) for p in (2, 3, 5, 7)]
    for d, n, p in cases:
        census = tuple_census(d, n, p)
        report = free_bound_check(census)
        yield _result(
            "free-bounds",
            f"d={d} n={n} p={p}",
            "r_n(F_d, F_p) >= c_p^d p^(n^2 (d-1)) and >= |GL_n|^(d-1) - sum_k |P(k,n-k)|^(d-1)",
            report.holds,
            f"classes {report.iso_classes}, c_p bound {report.c_p_bound}, parabolic bound {report.parabolic_bound}",
        )
        recount = burnside_class_count(census)
        yield _result(
            "free-bounds",
            f"burnside d={d} n={n} p={p}",
            "orbit count equals the average number of fixed irreducible tuples",
            recount == census.iso_classes,
            f"orbits {census.iso_classes}, burnside {recount}",
        )


BRAUER_GROUPS = [f"C{m}" for m in range(1, 13)] + ["S3", "D4", "A4", "S4", "A5", "S3xC2"]


def brauer() -> Iterator[CheckResult]:
    for spec in BRAUER_GROUPS:
        g = parse_group(spec)
        for p in (2, 3, 5):
            lhs, rhs = brauer_check(g, p)
            yield _result(
                "brauer",
                f"{spec} p={p}",
                "sum of endomorphism degrees of F_p-simples = number of p-regular classes",
                lhs == rhs,
                f"{lhs} vs {rhs}",
            )


def galois_law() -> Iterator[CheckResult]:
    for spec in ("S3", "D4", "A4", "A5"):
        g = parse_group(spec)
        for p in (2, 3):
            for report in galois_orbits(g, p, 2):
                ok = report.bijective and all(
                    o.dimension_law and o.split_exactly for o in report.orbits
                )
                yield _result(
                    "galois-law",
                    f"{spec} p={p} d={report.d}",
                    "Frobenius orbits descend bijectively with dim = orbit length x member dim",
                    ok,
                    f"{len(report.orbits)} orbits",
                )
    reports = galois_orbits(parse_group("A5"), 2, 2)
    fused = [
        o for o in reports[1].orbits if len(o.members) == 2 and o.member_dim == 2 and o.descent_dim == 4
    ]
    yield _result(
        "galois-law",
        "A5 p=2 fusion",
        "two conjugate 2-dimensional F_4-modules descend to one 4-dimensional F_2-module",
        len(fused) == 1,
        f"{len(fused)} fused orbits",
    )


def convolution() -> Iterator[CheckResult]:
    for spec1, spec2, p in (("S3", "C2", 3), ("S3", "S3", 2)):
        report = product_convolution_check(parse_group(spec1), parse_group(spec2), field_make(p), 4)
        yield _result(
            "convolution",
            f"{spec1}x{spec2} p={p}",
            "r*_n(G1 x G2) = sum_(n1 n2 = n) r*_n1(G1) r*_n2(G2)",
            report.holds,
            f"{report.left} vs {report.right}",
        )


PRESENTATIONS = {
    "C2": "<a | a^2>",
    "C3": "<a | a^3>",
    "S3": "<a, b | a^2, b^3, (ab)^2>",
}


def abelian_chain() -> Iterator[CheckResult]:
    for spec, p, k in (("C2", 2, 1), ("C3", 3, 1), ("S3", 2, 1), ("S3", 2, 2), ("S3", 3, 1)):
        g = parse_group(spec)
        report = abelian_extension_chain(g, p, k)
        yield _result(
            "abelian-extension-chain",
            f"{spec} p={p} k={k}",
            "r_k(G, F_p) <= e^min_(p^k)(G) <= sum_V |H^2(G, V)|",
            report.holds,
            f"{report.r_k} <= {report.count} <= {report.cohomology_sum}",
        )
        bound = presentation_bound_check(g, Presentation.parse(PRESENTATIONS[spec]), p, k)
        yield _result(
            "abelian-extension-chain",
            f"presentation {spec} p={p} k={k}",
            "e^min_(p^k)(G) <= p^(r k) r_k(G, F_p) for an r-relator presentation",
            bound.holds,
            f"{bound.lhs} <= {bound.rhs}",
        )
    count = len(abelian_minimal_extensions(cyclic(2), 2, 1))
    yield _result(
        "abelian-extension-chain",
        "e^min_2(C2)",
        "C2 has exactly two minimal extensions of degree 2",
        count == 2,
        f"{count}",
    )


SURJECTIONS = [("C4", 2), ("C2xC2", 2), ("C2xC2", 4), ("C2^3", 2), ("Q8", 4), ("S3", 3), ("C6", 6)]


def extension_sandwich() -> Iterator[CheckResult]:
    for spec, kernel_order in SURJECTIONS:
        f = parse_surjection(parse_group(spec), kernel_order)
        report = stable_to_extension_map(f)
        yield _result(
            "extension-sandwich",
            f"{spec} kernel {kernel_order}",
            "at most |K|^d maximal stable subgroups give isomorphic extensions",
            report.holds,
            f"buckets {report.buckets}, d={report.d}, undecided {report.undecided}",
        )


def nonabelian_extensions() -> Iterator[CheckResult]:
    g = parse_group("C2xC2")
    a5 = simple_group("A5")
    halves = [h for h in all_subgroups(g) if h.order == 2]
    keys = []
    for h in halves:
        e = semidirect_EH(g, h, a5)
        key = t_map(e).key
        keys.append(key)
        yield _result(
            "nonabelian-extensions",
            f"E_H for |H|=2 generated by {h.gens}",
            "S^(G/H) : G has minimal normal kernel and t maps it back to [H]",
            kernel_is_minimal_normal(e) and key == subgroup_class(h).key,
            f"total order {e.total.order}",
        )
    yield _result(
        "nonabelian-extensions",
        "t separates E_H",
        "nonconjugate H give t-distinct extensions",
        len(set(keys)) == len(halves),
        f"{len(set(keys))} classes for {len(halves)} subgroups",
    )
    for k in (1, 2):
        report = coupling_fiber_bound_check(cyclic(2), a5, k)
        yield _result(
            "nonabelian-extensions",
            f"couplings C2 A5 k={k}",
            "each stabilizer class carries at most |Out(S)|^(k d(G)) coupling classes",
            report.fibers_hold and report.count_holds,
            f"count {report.count}, buckets {report.buckets}, bound {report.fiber_bound}",
        )


def probability() -> Iterator[CheckResult]:
    for spec, kernel_order in SURJECTIONS:
        f = parse_surjection(parse_group(spec), kernel_order)
        lattice = stable_lattice(f)
        yield _result(
            "probability",
            f"{spec} kernel {kernel_order} independence",
            "[R : M_i n M_j] = [R : M_i][R : M_j]",
            independence_check(lattice),
            f"{len(lattice.maximal())} maximal stable subgroups",
        )
        for k in (1, 2, 3):
            exact = exact_gen_probability(lattice, k)
            if kernel_order**k <= 10**6:
                brute = exhaustive_gen_probability(lattice, k)
                yield _result(
                    "probability",
                    f"{spec} kernel {kernel_order} k={k} exhaustive",
                    "Moebius inversion over the stable lattice counts normally generating tuples",
                    exact == brute,
                    f"{exact} vs {brute}",
                )
            pfr = pfr_sum_bound_check(lattice, k)
            yield _result(
                "probability",
                f"{spec} kernel {kernel_order} k={k} union bound",
                "1 - P(k) <= sum_n m_n^H(R) n^-k",
                pfr.holds,
                f"{pfr.failure} <= {pfr.bound}",
            )
            estimate = monte_carlo_gen_probability(f, k, 10**5, seed=k)
            agrees = estimate.agrees_with(exact)
            if not agrees:
                estimate = monte_carlo_gen_probability(f, k, 10**5, seed=10**6 + k)
                agrees = estimate.agrees_with(exact)
            yield _result(
                "probability",
                f"{spec} kernel {kernel_order} k={k} monte carlo",
                "sampled estimate within 3 standard errors of the exact probability",
                agrees,
                f"{estimate.estimate:.5f} +- {estimate.stderr:.5f} vs {float(exact):.5f}",
            )


def ideal_sandwich() -> Iterator[CheckResult]:
    for spec in ("C2", "C3", "C6", "S3", "D4", "A4"):
        g = parse_group(spec)
        for p in (2, 3):
            census = ideal_census(g, p, 3)
            yield _result(
                "ideal-sandwich",
                f"{spec} p={p}",
                "r_n(G, F_p) <= m_(p^n) <= p^n r_n(G, F_p)",
                all(row.holds for row in census.rows),
                "; ".join(f"n={r.n}: {r.r_n} <= {r.m_ideal}" for r in census.rows),
            )


def generation_bounds() -> Iterator[CheckResult]:
    for spec, p, k in (("C2", 2, 1), ("C3", 3, 1), ("S3", 2, 1), ("S3", 2, 2), ("S3", 3, 1)):
        g = parse_group(spec)
        for i, e in enumerate(abelian_minimal_extensions(g, p, k)):
            report = generation_bound_check(e)
            yield _result(
                "generation-bounds",
                f"{spec} p={p} k={k} #{i}",
                "d(E) <= d(G) + 1 for minimal extensions with abelian kernel",
                report.holds,
                f"d(G)={report.base_generators}, d(E)={report.total_generators}",
            )
    s3 = symmetric(3)
    v = next(rec.module for rec in simple_modules(s3, field_make(2)) if rec.dim == 2)
    report = semidirect_product_generators_check(s3, v, cyclic(2))
    yield _result(
        "generation-bounds",
        "(V:S3)xC2",
        "d((V : G) x H) <= d(G) + d(H) with the explicit tuple",
        report.holds,
        f"d={report.d_total}, bound {report.bound}",
    )


def determinism() -> Iterator[CheckResult]:
    runs = [
        ("census", lambda: tuple_census(2, 2, 2).model_dump_json()),
        ("growth table", lambda: r_counts(symmetric(3), field_make(2), 4).model_dump_json()),
        (
            "monte carlo",
            lambda: monte_carlo_gen_probability(
                parse_surjection(parse_group("C2xC2"), 4), 2, 10**4, seed=7
            ).model_dump_json(),
        ),
    ]
    for name, run in runs:
        first, second = run(), run()
        yield _result(
            "determinism",
            name,
            "identical inputs and seed give identical output",
            first == second,
            f"{len(first)} bytes",
        )


SUITES: dict[str, Callable[[], Iterator[CheckResult]]] = {
    "order-formulas": order_formulas,
    "free-bounds": free_bounds,
    "brauer": brauer,
    "galois-law": galois_law,
    "convolution": convolution,
    "abelian-extension-chain": abelian_chain,
    "extension-sandwich": extension_sandwich,
    "nonabelian-extensions": nonabelian_extensions,
    "probability": probability,
    "ideal-sandwich": ideal_sandwich,
    "generation-bounds": generation_bounds,
    "determinism": determinism,
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str) -> SuiteReport:
    """Run a suite by name, or every suite for ``"all"``.

    :raises InvalidInput: For an unknown name; the message lists the known ones.
    """
    if name == "all":
        checks = [c for suite in SUITES.values() for c in suite()]
    elif name in SUITES:
        checks = list(SUITES[name]())
    else:
        raise InvalidInput(f"unknown suite {name!r}; available: {', '.join(suite_names())}")
    logger.info("suite %s: %d checks", name, len(checks))
    return SuiteReport(suite=name, checks=checks)
