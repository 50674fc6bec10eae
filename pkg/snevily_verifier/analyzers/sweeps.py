"""
Acceptance sweeps: exhaustive small-case and seeded random checks of every theorem.

Each suite returns a SweepReport. Instances are visited in canonical order and all
randomness comes from ``numpy.random.default_rng(seed)``, so a report depends only
on its parameters. Timings are logged, never reported.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..config.settings import BudgetSettings, SweepSettings
from ..core.abelian_group import (
    GroupElement, GroupSpec, abelian_groups_up_to, enumerate_elements, format_elements, format_group_spec,
)
from ..core.characters import (
    character_table, character_table_determinant, dual_elements, fourier_coefficients, orthogonality_sum,
)
from ..core.fields import (
    FieldCtx, admissible_primes, build_cyclotomic_field, build_finite_field, format_field_spec, random_element,
)
from ..core.linalg import determinant
from ..exceptions import BudgetExceededError
from .matroid import LinearMatroid, brute_force_common_basis, common_basis, is_independent
from .snevily import (
    addition_table, cauchy_binet_check, char2_identity_check, distinguished_indices, find_snevily_permutation,
    negation_table, permutation_sign, signed_count, snevily_polynomial, sum_matrix, verify_theorem1_witness,
)

logger = logging.getLogger(__name__)

SUITES = ("characters", "theorem1", "oracle", "lemma4", "theorem3", "identities", "coherence")
THEOREM3_ORDERS = (3, 5, 7, 9, 15)
THEOREM3_EXTRA_GROUPS = (GroupSpec((3, 5)),)
REDUCTION_PRIMES = (2, 3, 5)
MAX_RECORDED_VIOLATIONS = 20

InstanceInfo = Union[Dict[str, Any], Callable[[], Dict[str, Any]], None]


@dataclass
class SweepReport:
    """Outcome of one acceptance suite"""
    suite: str
    parameters: Dict[str, Any]
    checked: int = 0
    violation_count: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)
    buckets: Dict[Tuple[str, str, str], Dict[str, int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def _bucket(self, check: str, spec: GroupSpec, field_name: str) -> Dict[str, int]:
        return self.buckets.setdefault((check, format_group_spec(spec), field_name),
                                       {"instances": 0, "violations": 0})

    def record(self, check: str, spec: GroupSpec, field_name: str, ok: bool, instance: InstanceInfo = None) -> None:
        """Count one instance; ``instance`` may be a callable, evaluated only for a violation"""
        bucket = self._bucket(check, spec, field_name)
        bucket["instances"] += 1
        self.checked += 1
        if not ok:
            bucket["violations"] += 1
            self.violation_count += 1
            if len(self.violations) < MAX_RECORDED_VIOLATIONS:
                entry = {"check": check, "group": format_group_spec(spec), "field": field_name}
                entry.update((instance() if callable(instance) else instance) or {})
                self.violations.append(entry)
                logger.warning("violation in %s/%s: %s", self.suite, check, entry)

    def tally(self, check: str, spec: GroupSpec, field_name: str, passed: int) -> None:
        """Count ``passed`` instances that held, in one step"""
        self._bucket(check, spec, field_name)["instances"] += passed
        self.checked += passed

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {"check": check, "group": group, "field": field_name, **counts}
            for (check, group, field_name), counts in self.buckets.items()
        ]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows(), columns=["check", "group", "field", "instances", "violations"])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "passed": self.passed,
            "checked": self.checked,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "buckets": self.rows(),
        }


def contexts_for(spec: GroupSpec, finite_count: int = 1, cyclotomic: bool = True) -> List[FieldCtx]:
    """The smallest admissible finite fields, then Q(zeta_n)"""
    n = spec.exponent
    contexts: List[FieldCtx] = [build_finite_field(p, n) for p in admissible_primes(n, finite_count)]
    if cyclotomic:
        contexts.append(build_cyclotomic_field(n))
    return contexts


def field_label(ctx: FieldCtx) -> str:
    return format_field_spec(ctx) if ctx.characteristic == 0 else ctx.name


def subset_pairs(spec: GroupSpec, k: int) -> Iterator[Tuple[Tuple[GroupElement, ...], Tuple[GroupElement, ...]]]:
    """All ordered pairs of k-subsets in canonical order"""
    subsets = list(itertools.combinations(enumerate_elements(spec), k))
    return itertools.product(subsets, subsets)


def random_subset(spec: GroupSpec, k: int, rng: np.random.Generator) -> Tuple[GroupElement, ...]:
    elements = enumerate_elements(spec)
    return tuple(elements[int(i)] for i in rng.choice(len(elements), size=k, replace=False))


def random_phi(ctx: FieldCtx, spec: GroupSpec, rng: np.random.Generator) -> Dict[GroupElement, Any]:
    return {g: random_element(ctx, rng) for g in enumerate_elements(spec)}


def _instance(A: Sequence[GroupElement], B: Sequence[GroupElement], **extra) -> Dict[str, Any]:
    info = {"set_a": format_elements(A), "set_b": format_elements(B)}
    info.update({key: str(value) for key, value in extra.items()})
    return info


class SweepRunner:
    """Runs the acceptance suites under one set of budgets and sweep settings"""

    def __init__(self, sweeps: SweepSettings = None, budgets: BudgetSettings = None):
        self.sweeps = sweeps or SweepSettings()
        self.budgets = budgets or BudgetSettings()

    def run(self, suite: str, **overrides) -> SweepReport:
        """Run one suite by name; keyword overrides replace the configured bounds"""
        handlers: Dict[str, Callable[..., SweepReport]] = {
            "characters": self.characters_suite,
            "theorem1": self.theorem1_suite,
            "oracle": self.oracle_suite,
            "lemma4": self.lemma4_suite,
            "theorem3": self.theorem3_suite,
            "identities": self.identities_suite,
            "coherence": self.coherence_suite,
        }
        if suite not in handlers:
            raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        started = time.perf_counter()
        report = handlers[suite](**{k: v for k, v in overrides.items() if v is not None})
        logger.info("suite %s: %d checks, %d violations in %.1fs", suite, report.checked,
                    report.violation_count, time.perf_counter() - started)
        return report

    def _rng(self, seed: Optional[int]) -> np.random.Generator:
        return np.random.default_rng(self.sweeps.seed if seed is None else seed)

    def _seed(self, seed: Optional[int]) -> int:
        return self.sweeps.seed if seed is None else seed

    def characters_suite(self, max_m: int = None, trials: int = None, seed: int = None) -> SweepReport:
        """Orthogonality, nonsingular character table, and Fourier round trips"""
        max_m = max_m or self.sweeps.characters_max_m
        trials = self.sweeps.fourier_trials if trials is None else trials
        rng = self._rng(seed)
        report = SweepReport("characters", {"max_m": max_m, "trials": trials, "seed": self._seed(seed)})
        for spec in abelian_groups_up_to(max_m):
            chars = dual_elements(spec)
            elements = enumerate_elements(spec)
            for ctx in contexts_for(spec):
                label = field_label(ctx)
                m_image = ctx.from_int(spec.order)
                for u, v in itertools.product(chars, chars):
                    expected = m_image if u == v else ctx.zero()
                    report.record("orthogonality", spec, label, orthogonality_sum(ctx, spec, u, v) == expected,
                                  lambda: {"u": str(u), "v": str(v)})
                table_det = character_table_determinant(ctx, spec)
                report.record("table_nonsingular", spec, label, not table_det.is_zero())
                if ctx.characteristic:
                    eliminated = determinant(ctx, character_table(ctx, spec))
                    report.record("table_determinant_agrees", spec, label, eliminated == table_det,
                                  lambda: {"eliminated": str(eliminated), "factored": str(table_det)})
                for _ in range(trials):
                    phi = random_phi(ctx, spec, rng)
                    values = fourier_coefficients(ctx, spec, phi).reconstruct_all()
                    report.record("fourier_round_trip", spec, label, all(values[g] == phi[g] for g in elements))
        return report

    def _theorem1_instance(self, report: SweepReport, ctx: FieldCtx, spec: GroupSpec,
                           A: Sequence[GroupElement], B: Sequence[GroupElement], check: str) -> None:
        chars = common_basis(LinearMatroid.over_characters(ctx, spec, A),
                             LinearMatroid.over_characters(ctx, spec, B))
        ok = chars is not None and verify_theorem1_witness(ctx, spec, A, B, chars)
        report.record(check, spec, field_label(ctx), ok, lambda: _instance(A, B, characters=chars))

    def theorem1_suite(self, max_m: int = None, max_k: int = None, random_instances: int = None,
                       seed: int = None) -> SweepReport:
        """Common character bases exist for every pair of equal-size subsets"""
        max_m = max_m or self.sweeps.theorem1_max_m
        max_k = max_k or self.sweeps.theorem1_max_k
        random_instances = self.sweeps.random_instances if random_instances is None else random_instances
        rng = self._rng(seed)
        report = SweepReport("theorem1", {"max_m": max_m, "max_k": max_k, "random_instances": random_instances,
                                          "random_max_m": self.sweeps.theorem1_random_max_m,
                                          "random_max_k": self.sweeps.theorem1_random_max_k})
        for spec in abelian_groups_up_to(max_m):
            for ctx in contexts_for(spec, finite_count=2):
                for k in range(1, min(max_k, spec.order) + 1):
                    for A, B in subset_pairs(spec, k):
                        self._theorem1_instance(report, ctx, spec, A, B, "exhaustive")
        groups = abelian_groups_up_to(self.sweeps.theorem1_random_max_m)
        for _ in range(random_instances):
            spec = groups[int(rng.integers(len(groups)))]
            contexts = contexts_for(spec, finite_count=2)
            ctx = contexts[int(rng.integers(len(contexts)))]
            k = int(rng.integers(1, min(self.sweeps.theorem1_random_max_k, spec.order) + 1))
            self._theorem1_instance(report, ctx, spec, random_subset(spec, k, rng), random_subset(spec, k, rng),
                                    "random")
        return report

    def oracle_suite(self, max_m: int = None, max_k: int = None, instances: int = None,
                     seed: int = None) -> SweepReport:
        """Matroid intersection agrees with brute force on feasibility"""
        max_m = max_m or self.sweeps.oracle_max_m
        max_k = max_k or self.sweeps.oracle_max_k
        instances = self.sweeps.oracle_instances if instances is None else instances
        rng = self._rng(seed)
        report = SweepReport("oracle", {"instances": instances, "max_m": max_m, "max_k": max_k})
        groups = abelian_groups_up_to(max_m)
        for _ in range(instances):
            spec = groups[int(rng.integers(len(groups)))]
            contexts = contexts_for(spec, finite_count=2)
            ctx = contexts[int(rng.integers(len(contexts)))]
            k = int(rng.integers(1, min(max_k, spec.order) + 1))
            A, B = random_subset(spec, k, rng), random_subset(spec, k, rng)
            matA = LinearMatroid.over_characters(ctx, spec, A)
            matB = LinearMatroid.over_characters(ctx, spec, B)
            fast = common_basis(matA, matB)
            slow = brute_force_common_basis(matA, matB, self.budgets.max_subsets)
            ok = (fast is None) == (slow is None)
            if fast is not None:
                ok = ok and is_independent(matA, fast) and is_independent(matB, fast)
            report.record("feasibility_agrees", spec, field_label(ctx), ok,
                          lambda: _instance(A, B, fast=fast, slow=slow))
        return report

    def lemma4_suite(self, max_m: int = None, max_k: int = None) -> SweepReport:
        """The distinguished permutation's sum multiset is unique and its coefficient survives reduction.

        Runs on element indices with the cached addition table; the sets come from
        the enumeration, so nothing is validated per instance.
        """
        max_m = max_m or self.sweeps.lemma4_max_m
        max_k = max_k or self.sweeps.lemma4_max_k
        if max_k > self.budgets.max_permutation_k:
            raise BudgetExceededError("lemma4 sweep", max_k, self.budgets.max_permutation_k)
        report = SweepReport("lemma4", {"max_m": max_m, "max_k": max_k, "primes": list(REDUCTION_PRIMES)})
        checks = ("unique_signature", "coefficient_is_sign", "survives_reduction")
        for spec in abelian_groups_up_to(max_m):
            table, negation = addition_table(spec), negation_table(spec)
            elements = enumerate_elements(spec)
            passed, clean = dict.fromkeys(checks, 0), 0
            for k in range(1, min(max_k, spec.order) + 1):
                for A, B in itertools.product(itertools.combinations(range(spec.order), k), repeat=2):
                    sums = [[table[a][b] for b in B] for a in A]
                    pi = distinguished_indices(table, negation, A, B)
                    signature = tuple(sorted(sums[i][pi[i]] for i in range(k)))
                    count, coefficient = signed_count(sums, signature)
                    oks = (count == 1, coefficient == permutation_sign(pi),
                           all(coefficient % c for c in REDUCTION_PRIMES))
                    if all(oks):
                        clean += 1
                        continue
                    extras = ({"count": count}, {"coefficient": coefficient}, {})
                    for check, ok, extra in zip(checks, oks, extras):
                        if ok:
                            passed[check] += 1
                        else:
                            report.record(check, spec, "-", False,
                                          _instance([elements[a] for a in A], [elements[b] for b in B],
                                                    pi=list(pi), **extra))
            for check in checks:
                report.tally(check, spec, "-", passed[check] + clean)
        return report

    def theorem3_suite(self, orders: Sequence[int] = THEOREM3_ORDERS, max_k: int = None,
                       random_instances: int = None, seed: int = None) -> SweepReport:
        """Distinct-sum permutations exist in odd-order groups; Z_2 shows the hypothesis is needed"""
        max_k = max_k or self.sweeps.theorem3_max_k
        random_instances = self.sweeps.random_instances if random_instances is None else random_instances
        rng = self._rng(seed)
        groups = [g for g in abelian_groups_up_to(max(orders)) if g.order in orders]
        groups += [g for g in THEOREM3_EXTRA_GROUPS if g.order in orders and g not in groups]
        report = SweepReport("theorem3", {"orders": list(orders), "groups": [format_group_spec(g) for g in groups],
                                          "max_k": max_k, "random_instances": random_instances})
        for spec in groups:
            for k in range(1, min(max_k, spec.order) + 1):
                for A, B in subset_pairs(spec, k):
                    report.record("exhaustive", spec, "-", find_snevily_permutation(spec, A, B) is not None,
                                  lambda: _instance(A, B))
        odd_groups = [g for g in abelian_groups_up_to(self.sweeps.theorem3_random_max_m) if g.order % 2]
        for _ in range(random_instances):
            spec = odd_groups[int(rng.integers(len(odd_groups)))]
            k = int(rng.integers(1, min(self.sweeps.theorem3_random_max_k, spec.order) + 1))
            A, B = random_subset(spec, k, rng), random_subset(spec, k, rng)
            report.record("random", spec, "-", find_snevily_permutation(spec, A, B) is not None,
                          lambda: _instance(A, B))
        z2 = GroupSpec((2,))
        both = enumerate_elements(z2)
        report.record("even_order_necessity", z2, "-", find_snevily_permutation(z2, both, both) is None,
                      _instance(both, both))
        return report

    def identities_suite(self, max_m: int = None, max_k: int = None, trials: int = None, seed: int = None,
                         checks: Sequence[str] = ("cauchy-binet", "char2")) -> SweepReport:
        """Cauchy-Binet and characteristic-2 expansions on random instances"""
        max_m = max_m or self.sweeps.identities_max_m
        max_k = max_k or self.sweeps.identities_max_k
        trials = self.sweeps.identity_trials if trials is None else trials
        rng = self._rng(seed)
        report = SweepReport("identities", {"trials": trials, "checks": list(checks), "max_m": max_m,
                                            "max_k": max_k})
        groups = abelian_groups_up_to(max_m)
        odd_groups = [g for g in groups if g.order % 2]
        for check in checks:
            for _ in range(trials):
                if check == "char2":
                    spec = odd_groups[int(rng.integers(len(odd_groups)))]
                    ctx = build_finite_field(2, spec.exponent)
                else:
                    spec = groups[int(rng.integers(len(groups)))]
                    contexts = contexts_for(spec)
                    ctx = contexts[int(rng.integers(len(contexts)))]
                k = int(rng.integers(1, min(max_k, spec.order) + 1))
                A, B = random_subset(spec, k, rng), random_subset(spec, k, rng)
                phi = random_phi(ctx, spec, rng)
                if check == "char2":
                    ok = char2_identity_check(ctx, spec, A, B, phi, self.budgets.max_subsets)
                else:
                    ok = cauchy_binet_check(ctx, spec, A, B, phi, self.budgets.max_subsets)
                report.record(check, spec, field_label(ctx), ok, lambda: _instance(A, B))
        return report

    def coherence_suite(self, max_m: int = None, max_k: int = None, trials: int = None,
                        seed: int = None) -> SweepReport:
        """The Snevily polynomial specialized at t_i = phi(g_i) equals Det L"""
        max_m = max_m or self.sweeps.identities_max_m
        max_k = max_k or self.sweeps.identities_max_k
        trials = self.sweeps.identity_trials if trials is None else trials
        rng = self._rng(seed)
        report = SweepReport("coherence", {"trials": trials, "max_m": max_m, "max_k": max_k})
        groups = abelian_groups_up_to(max_m)
        for _ in range(trials):
            spec = groups[int(rng.integers(len(groups)))]
            contexts = contexts_for(spec)
            ctx = contexts[int(rng.integers(len(contexts)))]
            k = int(rng.integers(1, min(max_k, spec.order) + 1))
            A, B = random_subset(spec, k, rng), random_subset(spec, k, rng)
            phi = random_phi(ctx, spec, rng)
            poly = snevily_polynomial(spec, A, B, self.budgets.max_permutation_k)
            ok = poly.evaluate(ctx, spec, phi) == determinant(ctx, sum_matrix(ctx, spec, A, B, phi))
            report.record("specialization", spec, field_label(ctx), ok, lambda: _instance(A, B))
        return report
