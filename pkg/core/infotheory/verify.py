"""Information-theoretic checks on strategy joints.

Every check accepts an unbatched joint or a batch of joints and reports the
worst batch element. Joints use the variable names x, z, y, s, y_tilde,
b_tilde, a (and optionally b); `assumptions_joint` produces them from a
strategy joint.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from core.errors import PreconditionError
from core.reports.models import CheckResult, InfoReport, SuiteReport

from .distribution import JointDistribution, random_joints
from .measures import entropy, guessed_information, mutual_information, tripartite_information

logger = logging.getLogger(__name__)

ASSUMPTION_NAMES = ("x", "z", "y", "s", "y_tilde", "b_tilde", "a")
PARITY = "a_xor_x"
CONTEXT = ("y_tilde", "s")


def assumptions_joint(joint: JointDistribution, shared: Sequence[str] = ("a_tilde",)) -> JointDistribution:
    """Joint over x, z, y, s, y~, b~, a (and b when present).

    s enumerates the values of the `shared` variables in mixed radix; with no
    shared variables it is a constant of arity 1.
    """
    shared = tuple(shared)
    joint.require(*shared)
    arities = [joint.arity(n) for n in shared]

    def combine(*values: np.ndarray) -> np.ndarray | int:
        index: np.ndarray | int = 0
        for arity, value in zip(arities, values):
            index = index * arity + value
        return index

    d = joint.derive("shared_index", combine, shared, arity=math.prod(arities))
    keep = ["x", "z", "y", "shared_index", "y_tilde", "b_tilde", "a"] + (["b"] if "b" in joint.names else [])
    return d.marginal(keep).relabel({"shared_index": "s"})


def _with_parity(d: JointDistribution) -> JointDistribution:
    if PARITY in d.names:
        return d
    return d.derive(PARITY, lambda a, x: a ^ x, ("a", "x"))


def _array(value: object) -> np.ndarray:
    return np.asarray(value, dtype=float)


def _worst(excess: object) -> tuple[int | None, str | None]:
    """Batch index with the largest excess, and a note naming it."""
    arr = _array(excess)
    if not arr.ndim:
        return None, None
    index = int(np.argmax(arr))
    return index, f"worst of {arr.size} joints at batch index {index}"


def _at(value: object, index: int | None) -> float:
    arr = _array(value)
    return float(arr) if index is None else float(arr.reshape(-1)[index])


def _report(
    quantity: str,
    value: float,
    bound: float,
    tolerance: float,
    terms: dict[str, float] | None = None,
    applicable: bool = True,
    note: str | None = None,
) -> InfoReport:
    return InfoReport(
        quantity=quantity,
        value=value,
        bound=bound,
        satisfied=value <= bound + tolerance,
        slack=bound - value,
        applicable=applicable,
        note=note,
        terms=terms or {},
    )


def _pr_success(d: JointDistribution) -> np.ndarray | None:
    if "b" not in d.names:
        return None
    return _array(d.probability(lambda x, y, a, b: (a ^ b) == (x & y), ("x", "y", "a", "b")))


def _require_independent(d: JointDistribution, groups: Sequence[Sequence[str]], tolerance: float) -> None:
    """Raise PreconditionError unless the groups are mutually independent in every batch element."""
    if not d.batch_ndim and d.exact:
        if not d.is_independent(groups):
            raise PreconditionError("variables are not mutually independent", groups=[list(g) for g in groups])
        return
    flat = [n for g in groups for n in g]
    joint = d.marginal(flat).probabilities()
    product = np.ones(d.batch_shape)
    for group in groups:
        p = d.marginal(group).probabilities()
        product = product.reshape(product.shape + (1,) * (p.ndim - d.batch_ndim)) * p.reshape(
            d.batch_shape + (1,) * (product.ndim - d.batch_ndim) + p.shape[d.batch_ndim:]
        )
    if not np.allclose(joint, product.reshape(joint.shape), atol=tolerance, rtol=0):
        raise PreconditionError("variables are not mutually independent", groups=[list(g) for g in groups])


def chsh_guessed(
    d: JointDistribution,
    observed: Sequence[str] = ("b_tilde", "y_tilde"),
    shared: Sequence[str] = ("s",),
    tolerance: float = 1e-9,
) -> InfoReport:
    """1/2 J(observed, s -> a | y = 0) + 1/2 J(observed, s -> a xor x | y = 1) against 3/4."""
    d = _with_parity(d)
    d.require("x", "y", "a", *observed, *shared)
    seen = tuple(observed) + tuple(shared)
    j0 = guessed_information(d.condition({"y": 0}), seen, "a")
    j1 = guessed_information(d.condition({"y": 1}), seen, PARITY)
    if isinstance(j0, Fraction) and isinstance(j1, Fraction):
        value: object = (j0 + j1) / 2
    else:
        value = (_array(j0) + _array(j1)) / 2
    index, note = _worst(value)
    return _report(
        "CHSH guessed information",
        _at(value, index),
        0.75,
        tolerance,
        {"J(a | y=0)": _at(j0, index), "J(a^x | y=1)": _at(j1, index)},
        note=note,
    )


def verify_lemma4(d: JointDistribution, tolerance: float = 1e-12, trace: bool = False) -> InfoReport:
    """H(a | y~, s, y=0) = I(b~ : a | y~, s, y=0) and the same for a xor x at y = 1.

    The value is the larger gap H - I. With b present the check applies only
    when PR-correlations are perfect; otherwise the gap is still reported.
    """
    d = _with_parity(d)
    d.require("x", "y", "a", "b_tilde", *CONTEXT)
    given0, given1 = d.condition({"y": 0}), d.condition({"y": 1})
    h0 = entropy(given0, "a", CONTEXT)
    i0 = mutual_information(given0, "b_tilde", "a", CONTEXT)
    h1 = entropy(given1, PARITY, CONTEXT)
    i1 = mutual_information(given1, "b_tilde", PARITY, CONTEXT)
    gap = np.maximum(_array(h0) - _array(i0), _array(h1) - _array(i1))
    success = _pr_success(d)
    applicable = success is None or bool(np.all(np.abs(success - 1) <= tolerance))
    index, note = _worst(gap)
    if not applicable:
        note = f"PR-correlations not perfect (success {float(np.min(success)):.6g}); gap is informative only"
    terms = {
        "H(a|y~,s,y=0)": _at(h0, index),
        "I(b~:a|y~,s,y=0)": _at(i0, index),
        "H(a^x|y~,s,y=1)": _at(h1, index),
        "I(b~:a^x|y~,s,y=1)": _at(i1, index),
    }
    return _report(
        "H - I gap of Bob's perfect guesses",
        _at(gap, index),
        0.0,
        tolerance,
        terms if trace else None,
        applicable=applicable,
        note=note,
    )


def verify_lemma5(
    d: JointDistribution,
    first: Sequence[str] | str,
    second: Sequence[str] | str,
    third: Sequence[str] | str,
    given: Sequence[str] | str = (),
    tolerance: float = 1e-12,
    trace: bool = False,
) -> InfoReport:
    """I(S:T|V) + I(T:U|V) <= I(S:U|V) + I(T:SU|V), with the strong-subadditivity form alongside."""
    first, second, third, given = (
        (n,) if isinstance(n, str) else tuple(n) for n in (first, second, third, given)
    )
    lhs = _array(mutual_information(d, first, second, given)) + _array(mutual_information(d, second, third, given))
    rhs = _array(mutual_information(d, first, third, given)) + _array(
        mutual_information(d, second, first + third, given)
    )
    tri = _array(tripartite_information(d, first, second, third, given))
    ssa = (
        _array(entropy(d, first + second + third, given))
        + _array(entropy(d, second, given))
        - _array(entropy(d, first + second, given))
        - _array(entropy(d, second + third, given))
    )
    excess = np.maximum(lhs - rhs, ssa)
    index, note = _worst(excess)
    identity_ok = bool(np.all(np.abs(rhs - tri) <= tolerance))
    report = _report(
        "I(S:T|V) + I(T:U|V) - I(S:T:U|V)",
        _at(lhs - rhs, index),
        0.0,
        tolerance,
        {
            "lhs": _at(lhs, index),
            "rhs": _at(rhs, index),
            "I(S:T:U|V)": _at(tri, index),
            "H(STU|V)+H(T|V)-H(ST|V)-H(TU|V)": _at(ssa, index),
        }
        if trace
        else None,
        note=note,
    )
    if not identity_ok or _at(ssa, index) > tolerance:
        report.satisfied = False
    return report


def lemma5_suite(samples: int = 10000, seed: int = 7, tolerance: float = 1e-12) -> SuiteReport:
    """The one-bit-wire inequality and its companions on seeded random joints over four bits."""
    names = ("S", "T", "U", "V")
    rng = np.random.default_rng(seed)
    checks: list[CheckResult] = []
    counterexamples: list[dict[str, object]] = []
    info: list[InfoReport] = []

    if samples:
        d = random_joints(rng, names, samples)
        lhs = _array(mutual_information(d, "S", "T", "V")) + _array(mutual_information(d, "T", "U", "V"))
        rhs = _array(mutual_information(d, "S", "U", "V")) + _array(mutual_information(d, "T", ("S", "U"), "V"))
        tri = _array(tripartite_information(d, "S", "T", "U", "V"))
        ssa = (
            _array(entropy(d, ("S", "T", "U"), "V"))
            + _array(entropy(d, "T", "V"))
            - _array(entropy(d, ("S", "T"), "V"))
            - _array(entropy(d, ("T", "U"), "V"))
        )
        chain = _array(mutual_information(d, "S", ("T", "U"))) - (
            _array(mutual_information(d, "S", "T")) + _array(mutual_information(d, "S", "U", "T"))
        )
        conditioning = _array(entropy(d, "S", ("T",))) - _array(entropy(d, "S"))
        holds = lhs - rhs <= tolerance
        ssa_holds = ssa <= tolerance
        for i in np.nonzero(~(holds & ssa_holds))[0][:5]:
            counterexamples.append({"sample": int(i), "weights": d.weights[i].reshape(-1).tolist()})
        checks += [
            CheckResult(
                name="inequality holds on every sample",
                passed=bool(holds.all()),
                value=f"{int(holds.sum())}/{samples}",
                expected=f"{samples}/{samples}",
            ),
            CheckResult(
                name="strong subadditivity form holds on every sample",
                passed=bool(ssa_holds.all()),
                value=f"{int(ssa_holds.sum())}/{samples}",
            ),
            CheckResult(
                name="right-hand side equals the tripartite information",
                passed=bool(np.all(np.abs(rhs - tri) <= tolerance)),
                value=f"{float(np.max(np.abs(rhs - tri))):.3g}",
            ),
            CheckResult(
                name="chain rule I(S:TU) = I(S:T) + I(S:U|T)",
                passed=bool(np.all(np.abs(chain) <= tolerance)),
                value=f"{float(np.max(np.abs(chain))):.3g}",
            ),
            CheckResult(
                name="conditioning never increases entropy",
                passed=bool(np.all(conditioning <= tolerance)),
            ),
        ]
        info.append(
            _report("min slack of rhs - lhs", float(np.max(lhs - rhs)), 0.0, tolerance, note=f"{samples} samples, seed {seed}")
        )

    # independent bits: 0 <= 0; T a copy of (S, U): lhs = H(S) + H(U) = rhs
    independent = JointDistribution(names[:3], np.ones((2, 2, 2), dtype=np.int64))
    copied = np.zeros((2, 4, 2), dtype=np.int64)
    for s in (0, 1):
        for u in (0, 1):
            copied[s, 2 * s + u, u] = 1
    pair = JointDistribution(names[:3], copied)
    for label, d0 in (("independent bits", independent), ("T copies (S, U)", pair)):
        lhs0 = float(mutual_information(d0, "S", "T")) + float(mutual_information(d0, "T", "U"))
        rhs0 = float(mutual_information(d0, "S", "U")) + float(mutual_information(d0, "T", ("S", "U")))
        checks.append(
            CheckResult(
                name=f"{label}: lhs equals rhs",
                passed=abs(lhs0 - rhs0) <= tolerance,
                value=f"{lhs0:.6g}",
                expected=f"{rhs0:.6g}",
            )
        )

    report = SuiteReport.from_checks(
        "lemma5",
        checks,
        info=info,
        counts={"samples": str(samples), "seed": str(seed)},
        counterexamples=counterexamples,
    )
    logger.info("One-bit-wire inequality on %d samples: %s", samples, "pass" if report.passed else "FAIL")
    return report


def verify_theorem4(d: JointDistribution, tolerance: float = 1e-9, trace: bool = False) -> InfoReport:
    """Tradeoff between Bob's correlations with a, a xor x and with z.

    lhs = 1/2 I(a^x : b~ | y~,s,y=1) + 1/2 I(a : b~ | y~,s,y=0) + I(z : b~ | y~,s,y)
    rhs = 1/2 I(a : a^x : z | y~,s) + H(b~ | y~,s,y)

    Raises PreconditionError unless x, z, y and s are mutually independent.
    """
    d = _with_parity(d)
    d.require("x", "z", "y", "a", "b_tilde", *CONTEXT)
    _require_independent(d, (("x",), ("z",), ("y",), ("s",)), tolerance)
    given0, given1 = d.condition({"y": 0}), d.condition({"y": 1})
    parity_term = _array(mutual_information(given1, PARITY, "b_tilde", CONTEXT))
    output_term = _array(mutual_information(given0, "a", "b_tilde", CONTEXT))
    z_term = _array(mutual_information(d, "z", "b_tilde", CONTEXT + ("y",)))
    triple = _array(tripartite_information(d, "a", PARITY, "z", CONTEXT))
    noise = _array(entropy(d, "b_tilde", CONTEXT + ("y",)))
    lhs = parity_term / 2 + output_term / 2 + z_term
    rhs = triple / 2 + noise
    index, note = _worst(lhs - rhs)
    terms = {
        "I(a^x:b~|y~,s,y=1)": _at(parity_term, index),
        "I(a:b~|y~,s,y=0)": _at(output_term, index),
        "I(z:b~|y~,s,y)": _at(z_term, index),
        "I(a:a^x:z|y~,s)": _at(triple, index),
        "H(b~|y~,s,y)": _at(noise, index),
    }
    return _report(
        "correlation tradeoff lhs vs rhs",
        _at(lhs, index),
        _at(rhs, index),
        tolerance,
        terms if trace else None,
        note=note,
    )


def verify_theorem3(d: JointDistribution, tolerance: float = 1e-9, trace: bool = False) -> InfoReport:
    """I(z : b~, y~, y, s) <= 1/2, reporting the maximum over the batch.

    With b present, joints without perfect PR-correlations make the check
    non-applicable.
    """
    d.require("z", "y", "b_tilde", *CONTEXT)
    total = _array(mutual_information(d, "z", ("b_tilde", "y_tilde", "y", "s")))
    index, note = _worst(total)
    success = _pr_success(d)
    applicable = success is None or bool(np.all(np.abs(success - 1) <= tolerance))
    if not applicable:
        note = "PR-correlations not perfect; bound not claimed"
    terms = {
        "I(z:y,y~,s)": _at(mutual_information(d, "z", ("y", "y_tilde", "s")), index),
        "I(z:b~|y~,s,y)": _at(mutual_information(d, "z", "b_tilde", CONTEXT + ("y",)), index),
        "I(z:b~,y~,y,s)": _at(total, index),
    }
    return _report(
        "I(z : b~, y~, y, s)",
        _at(total, index),
        0.5,
        tolerance,
        terms if trace else None,
        applicable=applicable,
        note=note,
    )
