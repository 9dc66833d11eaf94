"""Seeded randomized verification suites behind ``multidep verify``.

Each suite returns a :class:`SuiteResult`; results depend only on
``(seed, trials, tol)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable

import numpy as np
from scipy.stats import unitary_group

from . import channels as ch
from .dependence import dependence, dependence_classical, dependence_pure, dicke_dependence_analytic, k_dependence
from .info import ProbTensor, conditional_mutual_information, grouped_cmi, mutual_information, subsystem_entropy
from .qmat import (
    DensityOperator,
    append_product_party,
    kron_all,
    permute_parties,
    random_density,
    random_pure_vector,
    rng,
    split_subsystem,
    tensor,
)
from .secret_sharing import leakage_audit, rate_bound, ss_decode, ss_encode
from .states import classical_presets, dicke, smolin

DEFAULT_TOL = 1e-9


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def worst(self, name: str, values, bound: float, *, upper: bool = False) -> None:
        """Record one aggregated check: every value above ``bound`` (or below, if ``upper``)."""
        values = np.asarray(list(values), dtype=float)
        if upper:
            extreme = float(values.max())
            self.add(name, extreme <= bound, f"max={extreme:.3e} over {values.size} cases (bound {bound:.1e})")
        else:
            extreme = float(values.min())
            self.add(name, extreme >= bound, f"min={extreme:.3e} over {values.size} cases (bound {bound:.1e})")


def _seeds(seed: int, count: int) -> list[int]:
    return [int(s) for s in rng(seed).integers(0, 2**63, size=count)]


def _random_mixed(gen: np.random.Generator, n: int, d: int) -> DensityOperator:
    rank = int(gen.integers(1, d**n + 1))
    return random_density(n, d, rank, seed=int(gen.integers(0, 2**63)))


def _random_probs(gen: np.random.Generator, n: int, d: int) -> ProbTensor:
    p = gen.dirichlet(np.full(d**n, 0.5))
    return ProbTensor(p / p.sum(), d)


def suite_ssa(seed: int = 0, trials: int = 200, tol: float = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("ssa")
    values = []
    for s in _seeds(seed, trials):
        gen = rng(s)
        n = int(gen.choice([3, 4]))
        d = 2 if n == 4 else int(gen.choice([2, 3]))
        rho = _random_mixed(gen, n, d)
        for i, j in combinations(range(n), 2):
            others = [x for x in range(n) if x not in (i, j)]
            values.append(conditional_mutual_information(rho, i, j, others))
            keep = [x for x in others if gen.random() < 0.5]
            values.append(conditional_mutual_information(rho, i, j, keep))
    res.worst("strong subadditivity I(a:b|C) >= 0", values, -tol)
    return res


def suite_chain_rule(seed: int = 0, trials: int = 200, tol: float = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("chain-rule")
    chain, dominance = [], []
    for s in _seeds(seed, trials):
        gen = rng(s)
        rho = _random_mixed(gen, 4, 2)
        x1, x2, x3, x4 = (int(v) for v in gen.permutation(4))
        lhs = grouped_cmi(rho, [x1], [x3, x4], [x2])
        rhs = grouped_cmi(rho, [x1], [x3], [x2]) + grouped_cmi(rho, [x1], [x4], [x2, x3])
        chain.append(abs(lhs - rhs))
        dominance.append(grouped_cmi(rho, [x1, x2], [x4], [x3]) - grouped_cmi(rho, [x1], [x4], [x2, x3]))
    res.worst("chain rule I(1:34|2) = I(1:3|2) + I(1:4|23)", chain, tol, upper=True)
    res.worst("grouped dominance I(12:4|3) >= I(1:4|23)", dominance, -tol)
    return res


def suite_bounds(seed: int = 0, trials: int = 200, tol: float = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("bounds")
    mixed, pure, agree, classical, monogamy = [], [], [], [], []
    for s in _seeds(seed, trials):
        gen = rng(s)
        n = int(gen.choice([3, 4]))
        d = 2 if n == 4 else int(gen.choice([2, 3]))
        mixed.append(dependence(_random_mixed(gen, n, d)).value)
        psi = random_pure_vector(n, d, seed=int(gen.integers(0, 2**63)))
        rp = dependence_pure(psi, d)
        pure.append(rp.value)
        agree.append(abs(rp.value - dependence(DensityOperator.from_vector(psi, d)).value))
        classical.append(dependence_classical(_random_probs(gen, n, d)).value)
        rho = DensityOperator.from_vector(psi, d)
        for i, j, k in permutations(range(n), 3):
            if i < k:
                mi = mutual_information(rho, [i], [j]) + mutual_information(rho, [j], [k])
                monogamy.append(mi - 2 * subsystem_entropy(rho, [j]))
    res.worst("mixed D >= 0", mixed, -tol)
    res.worst("mixed D <= 2", mixed, 2 + tol, upper=True)
    res.worst("pure D <= 1", pure, 1 + tol, upper=True)
    res.worst("pure shortcut agrees with full formula", agree, tol, upper=True)
    res.worst("classical D <= 1", classical, 1 + tol, upper=True)
    res.worst("monogamy I(i:j) + I(j:k) <= 2 S(j)", monogamy, tol, upper=True)
    return res


def _random_local_channels(gen: np.random.Generator, n: int, d: int) -> dict[int, ch.KrausChannel]:
    parties = [p for p in range(n) if gen.random() < 0.6] or [int(gen.integers(n))]
    return {
        p: ch.random_channel(d, int(gen.integers(1, d * d + 1)), seed=int(gen.integers(0, 2**63))) for p in parties
    }


def suite_monotonicity(seed: int = 0, trials: int = 200, tol: float = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("monotonicity")
    cmi_bound, dep_form, dpi, outside = [], [], [], []
    for s in _seeds(seed, trials):
        gen = rng(s)
        n = int(gen.choice([3, 4]))
        d = 2 if n == 4 else int(gen.choice([2, 3]))
        rho = _random_mixed(gen, n, d)
        chans = _random_local_channels(gen, n, d)
        a, b = (int(v) for v in gen.choice(n, size=2, replace=False))
        rec = ch.monotonicity_gap(rho, chans, a, b)
        cmi_bound.append(rec.bound_slack)
        dpi.append(rec.info_before - rec.info_after)
        dep_form.append(ch.monotonicity_gap(rho, chans).bound_slack)
        on_pair = {p: c for p, c in chans.items() if p in (a, b)}
        rest = [x for x in range(n) if x not in (a, b)]
        after = ch.apply_local(rho, on_pair)
        outside.append(
            conditional_mutual_information(rho, a, b, rest) - conditional_mutual_information(after, a, b, rest)
        )
    res.worst("cmi bound slack >= 0", cmi_bound, -tol)
    res.worst("dependence bound slack >= 0", dep_form, -tol)
    res.worst("data processing I(ab:rest) does not increase", dpi, -tol)
    res.worst("CMI monotone under channels outside the condition", outside, -tol)
    return res


def _zero_dependence_state(gen: np.random.Generator) -> DensityOperator:
    """Random 3-qubit state with D_3 = 0: a product cut or a classical Markov chain."""
    if gen.random() < 0.5:
        lone = random_density(1, 2, seed=int(gen.integers(0, 2**63)))
        pair = random_density(2, 2, seed=int(gen.integers(0, 2**63)))
        joined = tensor(lone, pair)
    else:
        p1 = gen.dirichlet(np.ones(2))
        t12 = gen.dirichlet(np.ones(2), size=2)
        t23 = gen.dirichlet(np.ones(2), size=2)
        p = np.einsum("a,ab,bc->abc", p1, t12, t23).ravel()
        joined = ProbTensor(p / p.sum(), 2).to_density()
    return permute_parties(joined, [int(v) for v in gen.permutation(3)])


def _random_on_dims(gen: np.random.Generator, dims: tuple[int, ...]) -> DensityOperator:
    size = int(np.prod(dims))
    m = random_density(1, size, seed=int(gen.integers(0, 2**63))).matrix
    return DensityOperator(m, dims=dims, check=False)


def _zero_dependence_split_source(gen: np.random.Generator) -> DensityOperator:
    """Random (2, 2, 4)-dimensional state whose three-party dependence vanishes."""
    choice = int(gen.integers(3))
    if choice == 0:
        return tensor(_random_on_dims(gen, (2, 2)), _random_on_dims(gen, (4,)))
    if choice == 1:
        return tensor(_random_on_dims(gen, (2,)), _random_on_dims(gen, (2, 4)))
    # classical Markov chain X0 - X2 - X1 with X2 four-valued
    p0 = gen.dirichlet(np.ones(2))
    t02 = gen.dirichlet(np.ones(4), size=2)
    t21 = gen.dirichlet(np.ones(2), size=4)
    p = np.einsum("a,ac,cb->abc", p0, t02, t21).ravel()
    return DensityOperator(np.diag((p / p.sum()).astype(complex)), dims=(2, 2, 4), check=False)


def _grouped_dependence(rho4: DensityOperator) -> float:
    """D_3 of the register with parties 2 and 3 fused, computed on the split state."""
    groups = [[0], [1], [2, 3]]
    vals = []
    for i, j in combinations(range(3), 2):
        cond = [x for k, g in enumerate(groups) if k not in (i, j) for x in g]
        vals.append(grouped_cmi(rho4, groups[i], groups[j], cond))
    return min(vals)


def suite_properties(seed: int = 0, trials: int = 200, tol: float = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("properties-i-ii")
    base, appended, grouped, split = [], [], [], []
    for s in _seeds(seed, trials):
        gen = rng(s)
        rho = _zero_dependence_state(gen)
        base.append(abs(dependence(rho).value))
        extra = random_density(1, 2, seed=int(gen.integers(0, 2**63)))
        bigger = append_product_party(rho, extra, int(gen.integers(4)))
        appended.append(abs(k_dependence(bigger, 3).value))
        src = _zero_dependence_split_source(gen)
        rho4 = split_subsystem(src, 2, 2, 2)
        grouped.append(abs(_grouped_dependence(rho4)))
        split.append(abs(dependence(rho4).value))
    res.worst("generated states have D_3 = 0", base, tol, upper=True)
    res.worst("(i) appending a product party keeps D_3 = 0", appended, tol, upper=True)
    res.worst("(ii) pre-split D_3 = 0", grouped, tol, upper=True)
    res.worst("(ii) splitting a party keeps D_4 = 0", split, tol, upper=True)
    return res


def _random_qubit(gen: np.random.Generator) -> np.ndarray:
    return random_density(1, 2, int(gen.integers(1, 3)), seed=int(gen.integers(0, 2**63))).matrix


def _random_mixed_marginal_state(gen: np.random.Generator, n: int) -> DensityOperator:
    """Random mixture of GHZ-basis states under random local unitaries; every qubit marginal is I/2."""
    dim = 2**n
    weights = gen.dirichlet(np.full(dim, 0.3))
    m = np.zeros((dim, dim), dtype=complex)
    for idx, w in enumerate(weights):
        x, sign = idx >> 1, 1 - 2 * (idx & 1)
        v = np.zeros(dim, dtype=complex)
        v[x] = 1 / np.sqrt(2)
        v[(dim - 1) ^ x] = sign / np.sqrt(2)
        m += w * np.outer(v, v.conj())
    u = kron_all(*(unitary_group.rvs(2, random_state=gen) for _ in range(n)))
    return DensityOperator(u @ m @ u.conj().T, 2)


def suite_secret_sharing(seed: int = 0, trials: int = 20, tol: float = 1e-10) -> SuiteResult:
    res = SuiteResult("secret-sharing")
    for n in (4, 6):
        errs, leaks = [], []
        for s in _seeds(seed + n, trials):
            secret = _random_qubit(rng(s))
            shares = ss_encode(secret, n)
            errs.append(np.abs(ss_decode(shares) - secret).max())
            leaks.append(leakage_audit(shares))
        res.worst(f"N={n} decode(encode(rho)) = rho", errs, tol, upper=True)
        res.worst(f"N={n} every proper subset maximally mixed", leaks, tol, upper=True)
    rb = rate_bound(smolin(4))
    res.add("Smolin-4 Choi lower bound = 1", abs(rb.lower_bound - 1) <= 1e-9, f"{rb.lower_bound:.12f}")
    res.add("Smolin-4 Choi coherent information = 1", abs(rb.coherent_info - 1) <= 1e-9, f"{rb.coherent_info:.12f}")
    slack, flagged = [], 0
    for s in _seeds(seed, trials):
        gen = rng(s)
        rb = rate_bound(_random_mixed_marginal_state(gen, int(gen.choice([3, 4, 5]))))
        flagged += not rb.marginals_maximally_mixed
        slack.append(rb.coherent_info - rb.lower_bound)
    res.add("random GHZ-diagonal states have I/2 marginals", flagged == 0, f"{flagged} flagged")
    res.worst("coherent information >= D - 1", slack, -DEFAULT_TOL)
    return res


def suite_dicke_analytic(seed: int = 0, trials: int = 0, tol: float = DEFAULT_TOL) -> SuiteResult:
    res = SuiteResult("dicke-analytic")
    diffs = []
    for n in range(3, 9):
        for e in range(1, n):
            diffs.append(abs(dicke_dependence_analytic(n, e) - dependence_pure(dicke(n, e)).value))
    res.worst("closed form = numeric for 3 <= N <= 8", diffs, tol, upper=True)
    half = dicke_dependence_analytic(200, 100)
    third = dicke_dependence_analytic(300, 100)
    res.add("N=200, e=N/2 within 0.02 of 1/2", abs(half - 0.5) <= 0.02, f"{half:.6f}")
    res.add("N=300, e=N/3 within 0.02 of 4/9", abs(third - 4 / 9) <= 0.02, f"{third:.6f}")
    return res


def suite_ad_example(seed: int = 0, trials: int = 0, tol: float = 5e-3) -> SuiteResult:
    res = SuiteResult("ad-example")
    rho = classical_presets("AD_example").to_density()
    before = dependence(rho)
    after = dependence(ch.apply_channel(rho, ch.amplitude_damping_half(), 0))
    res.add("D_3 before = 0.06", abs(before.value - 0.06) <= tol, f"{before.value:.4f}")
    res.add("minimum before conditions on party 0", before.min_pair == (1, 2), f"pair {before.min_pair}")
    res.add("D_3 after = 0.19", abs(after.value - 0.19) <= tol, f"{after.value:.4f}")
    tie = abs(after.cmi(0, 1) - after.cmi(0, 2))
    res.add(
        "minimum after is I(0:1|2) = I(0:2|1)",
        after.min_pair == (0, 1) and tie <= DEFAULT_TOL and after.cmi(1, 2) > after.value,
        f"pair {after.min_pair}, tie gap {tie:.1e}",
    )
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "ssa": suite_ssa,
    "chain-rule": suite_chain_rule,
    "bounds": suite_bounds,
    "monotonicity": suite_monotonicity,
    "properties-i-ii": suite_properties,
    "secret-sharing": suite_secret_sharing,
    "dicke-analytic": suite_dicke_analytic,
    "ad-example": suite_ad_example,
}


def run_suite(name: str, seed: int = 0, trials: int | None = None, tol: float | None = None) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    kwargs = {"seed": seed}
    if trials is not None:
        kwargs["trials"] = trials
    if tol is not None:
        kwargs["tol"] = tol
    return fn(**kwargs)
