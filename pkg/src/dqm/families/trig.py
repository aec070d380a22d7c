"""Families with eta(x) = cos x on (0, pi): the Askey-Wilson system and its
restrictions, plus continuous q-Jacobi/q-Laguerre.  gamma = log q < 0,
kappa = 1/q, auxiliary factor 2 sin x.  All shifted evaluations act on
z = e^{ix} as z -> q^s z.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from ..specfun import basic_hypergeometric_phi, q_pochhammer, q_pochhammer_inf
from .base import (
    ClosurePolys,
    Family,
    FamilyId,
    FamilySpec,
    ParamSet,
    SingularityError,
    conjugate_closed,
    qpoch_inf_vec,
    require,
)

__all__ = [
    "AskeyWilson",
    "ContinuousDualQHahn",
    "AlSalamChihara",
    "ContinuousBigQHermite",
    "ContinuousQHermite",
    "ContinuousQJacobi",
    "ContinuousQLaguerre",
]


def _sym(values, k):
    out = complex(0.0)
    for combo in combinations(values, k):
        term = complex(1.0)
        for v in combo:
            term *= v
        out += term
    return out


def _s2(q: float) -> float:
    """(q^{-1/2} - q^{1/2})^2 = q^{-1} - 2 + q."""
    return 1.0 / q - 2.0 + q


def _z_of(w) -> complex:
    return np.exp(1j * complex(w))


class _AskeyWilsonChain(Family):
    """Shared forms for Askey-Wilson and its parameter restrictions."""

    real_params_only = False

    def validate(self, p: ParamSet) -> None:
        m = self.spec.n_params
        require(len(p.a) == m, f"{self.spec.name} needs {m} parameters, got {len(p.a)}")
        require(p.q is not None, "q is required")
        require(0.0 < p.q < 1.0, f"q must lie in (0,1), got {p.q}")
        for i, ai in enumerate(p.a, start=1):
            require(abs(ai) < 1.0, f"|a{i}| >= 1 violated (|{ai}| = {abs(ai):.6g})")
        if self.real_params_only:
            for i, ai in enumerate(p.a, start=1):
                require(abs(ai.imag) < 1e-12, f"a{i} must be real, got {ai}")
        else:
            require(
                conjugate_closed(p.a),
                "parameter set must be closed under complex conjugation (as a set)",
            )

    def shifted(self, p: ParamSet, k: int = 1) -> ParamSet:
        factor = p.q ** (0.5 * k)
        return ParamSet(a=tuple(ai * factor for ai in p.a), q=p.q)

    def V(self, p: ParamSet, w) -> complex:
        z = _z_of(w)
        z2 = z * z
        den = (1.0 - z2) * (1.0 - p.q * z2)
        if den == 0:
            raise SingularityError(f"potential singular at x = {w}")
        num = complex(1.0)
        for ai in p.a:
            num *= 1.0 - ai * z
        return num / den

    def phi0(self, p: ParamSet, x):
        x = np.asarray(x, dtype=float)
        z = np.exp(1j * x)
        num = np.abs(qpoch_inf_vec(z * z, p.q))
        den = np.ones_like(num)
        for ai in p.a:
            den = den * np.abs(qpoch_inf_vec(ai * z, p.q))
        out = num / den
        return float(out) if out.ndim == 0 else out

    def weight_square(self, p: ParamSet, w) -> complex:
        q = p.q
        z = _z_of(w)
        out = q_pochhammer_inf(z * z, q) * q_pochhammer_inf(1.0 / (z * z), q)
        for ai in p.a:
            out /= q_pochhammer_inf(ai * z, q) * q_pochhammer_inf(ai / z, q)
        return out

    # E_n = q^{-n} - 1 for every restriction below Askey-Wilson
    def energy(self, p: ParamSet, n: int) -> float:
        return p.q ** (-n) - 1.0

    def f_shift(self, p: ParamSet, n: int):
        return p.q ** (0.5 * n) * (p.q ** (-n) - 1.0)

    def b_shift(self, p: ParamSet, n: int):
        return p.q ** (-0.5 * (n + 1))

    def level_from_energy(self, p: ParamSet, energy: float) -> float:
        # E_n = q^{-n} - 1  =>  q^N = (E+1)^{-1}
        return -math.log(energy + 1.0) / math.log(p.q)

    def _pivot(self, p: ParamSet):
        """Parameter used as 'a1' in the series; the largest one, by symmetry."""
        if not p.a:
            return None
        best = max(p.a, key=abs)
        return best if abs(best) > 0 else None

    def _series_qh_style(self, p: ParamSet, n: int, z: complex) -> complex:
        # all parameters vanish: continuous q-Hermite form
        return z**n * basic_hypergeometric_phi(
            [p.q ** (-n), 0.0], [], p.q, p.q**n / (z * z), n
        )


class AskeyWilson(_AskeyWilsonChain):
    """The four-parameter system; everything else in this group restricts it."""

    spec = FamilySpec(
        id=FamilyId.ASKEY_WILSON,
        ks_tag="KS3.1",
        eta_kind="cos x",
        interval=(0.0, math.pi),
        n_params=4,
        uses_q=True,
        uses_phi=False,
        param_names=("a1", "a2", "a3", "a4"),
    )

    def _b(self, p: ParamSet, k: int) -> complex:
        return _sym(p.a, k)

    def energy(self, p: ParamSet, n: int) -> float:
        b4 = self._b(p, 4).real
        return (p.q ** (-n) - 1.0) * (1.0 - b4 * p.q ** (n - 1))

    def closure(self, p: ParamSet) -> ClosurePolys:
        q = p.q
        s2 = _s2(q)
        b1 = self._b(p, 1).real
        b3 = self._b(p, 3).real
        b4 = self._b(p, 4).real
        u = 1.0 + b4 / q
        lin = b1 + b3 / q
        const = (1.0 + 1.0 / q) * (b3 + b1 * b4 / q)
        return ClosurePolys(
            r1=(s2, s2 * u),
            r0=(s2, 2.0 * s2 * u, s2 * (u * u - (1.0 + 1.0 / q) ** 2 * b4)),
            rm1=(0.0, -0.5 * s2 * lin, -0.5 * s2 * (lin * u - const)),
        )

    def c_n(self, p: ParamSet, n: int):
        b4 = self._b(p, 4).real
        return 2.0**n * q_pochhammer(b4 * p.q ** (n - 1), p.q, n).real

    def a_rec(self, p: ParamSet, n: int):
        q = p.q
        a1 = self._pivot(p)
        rest = list(p.a)
        rest.remove(a1)
        b4 = self._b(p, 4)
        qn = q**n
        t1 = 1.0 - b4 * q ** (n - 1)
        for aj in rest:
            t1 *= 1.0 - a1 * aj * qn
        t1 /= a1 * (1.0 - b4 * q ** (2 * n - 1)) * (1.0 - b4 * q ** (2 * n))
        t2 = a1 * (1.0 - qn)
        for aj, ak in combinations(rest, 2):
            t2 *= 1.0 - aj * ak * q ** (n - 1)
        t2 /= (1.0 - b4 * q ** (2 * n - 2)) * (1.0 - b4 * q ** (2 * n - 1))
        return 0.5 * (a1 + 1.0 / a1 - t1 - t2)

    def b_rec(self, p: ParamSet, n: int):
        q = p.q
        b4 = self._b(p, 4)
        qn = q**n
        prod = complex(1.0)
        for aj, ak in combinations(p.a, 2):
            prod *= 1.0 - aj * ak * q ** (n - 1)
        return (
            (1.0 - qn)
            * (1.0 - b4 * q ** (n - 2))
            * prod
            / (
                4.0
                * (1.0 - b4 * q ** (2 * n - 3))
                * (1.0 - b4 * q ** (2 * n - 2)) ** 2
                * (1.0 - b4 * q ** (2 * n - 1))
            )
        )

    def f_shift(self, p: ParamSet, n: int):
        return p.q ** (0.5 * n) * self.energy(p, n)

    def h0(self, p: ParamSet) -> float:
        q = p.q
        b4 = self._b(p, 4).real
        den = q_pochhammer_inf(q, q)
        for aj, ak in combinations(p.a, 2):
            den *= q_pochhammer_inf(aj * ak, q)
        return (2.0 * math.pi * q_pochhammer_inf(b4, q) / den).real

    def h0_over_hn(self, p: ParamSet, n: int) -> float:
        q = p.q
        b4 = self._b(p, 4).real
        den = q_pochhammer(q, q, n)
        for aj, ak in combinations(p.a, 2):
            den *= q_pochhammer(aj * ak, q, n)
        val = (
            (1.0 - b4 * q ** (2 * n - 1))
            / (1.0 - b4 * q ** (n - 1))
            * q_pochhammer(b4, q, n)
            / den
        )
        return complex(val).real

    def level_from_energy(self, p: ParamSet, energy: float) -> float:
        q = p.q
        b4 = self._b(p, 4).real
        if not (0.0 < b4 < q):
            raise ValueError(
                f"number-operator inversion needs 0 < b4 < q, got b4={b4}, q={q}"
            )
        hp = energy + 1.0 + b4 / q
        qn = q / (2.0 * b4) * (hp - math.sqrt(hp * hp - 4.0 * b4 / q))
        return math.log(qn) / math.log(q)

    def series_eval_x(self, p: ParamSet, n: int, x) -> complex:
        q = p.q
        a1 = self._pivot(p)
        z = _z_of(x)
        if a1 is None:
            return self._series_qh_style(p, n, z)
        rest = list(p.a)
        rest.remove(a1)
        b4 = self._b(p, 4)
        pref = a1 ** (-n)
        den_params = []
        for aj in rest:
            pref *= q_pochhammer(a1 * aj, q, n)
            den_params.append(a1 * aj)
        f = basic_hypergeometric_phi(
            [q ** (-n), b4 * q ** (n - 1), a1 * z, a1 / z],
            den_params,
            q,
            q,
            n,
        )
        return pref * f


class ContinuousDualQHahn(_AskeyWilsonChain):
    """Askey-Wilson restricted by a4 = 0."""

    spec = FamilySpec(
        id=FamilyId.CONTINUOUS_DUAL_Q_HAHN,
        ks_tag="KS3.3",
        eta_kind="cos x",
        interval=(0.0, math.pi),
        n_params=3,
        uses_q=True,
        uses_phi=False,
        param_names=("a1", "a2", "a3"),
    )

    def _b(self, p: ParamSet, k: int) -> complex:
        return _sym(p.a, k)

    def closure(self, p: ParamSet) -> ClosurePolys:
        q = p.q
        s2 = _s2(q)
        b1 = self._b(p, 1).real
        b3 = self._b(p, 3).real
        lin = b1 + b3 / q
        const = (1.0 + 1.0 / q) * b3
        return ClosurePolys(
            r1=(s2, s2),
            r0=(s2, 2.0 * s2, s2),
            rm1=(0.0, -0.5 * s2 * lin, -0.5 * s2 * (lin - const)),
        )

    def c_n(self, p: ParamSet, n: int):
        return 2.0**n

    def a_rec(self, p: ParamSet, n: int):
        q = p.q
        a1 = self._pivot(p)
        rest = list(p.a)
        rest.remove(a1)
        a2, a3 = rest
        qn = q**n
        return 0.5 * (
            a1
            + 1.0 / a1
            - (1.0 - a1 * a2 * qn) * (1.0 - a1 * a3 * qn) / a1
            - a1 * (1.0 - qn) * (1.0 - a2 * a3 * q ** (n - 1))
        )

    def b_rec(self, p: ParamSet, n: int):
        q = p.q
        prod = complex(1.0 - q**n)
        for aj, ak in combinations(p.a, 2):
            prod *= 1.0 - aj * ak * q ** (n - 1)
        return prod / 4.0

    def h0(self, p: ParamSet) -> float:
        q = p.q
        den = q_pochhammer_inf(q, q)
        for aj, ak in combinations(p.a, 2):
            den *= q_pochhammer_inf(aj * ak, q)
        return (2.0 * math.pi / den).real

    def h0_over_hn(self, p: ParamSet, n: int) -> float:
        q = p.q
        den = q_pochhammer(q, q, n)
        for aj, ak in combinations(p.a, 2):
            den *= q_pochhammer(aj * ak, q, n)
        return (1.0 / den).real

    def series_eval_x(self, p: ParamSet, n: int, x) -> complex:
        q = p.q
        a1 = self._pivot(p)
        z = _z_of(x)
        if a1 is None:
            return self._series_qh_style(p, n, z)
        rest = list(p.a)
        rest.remove(a1)
        a2, a3 = rest
        pref = a1 ** (-n) * q_pochhammer(a1 * a2, q, n) * q_pochhammer(a1 * a3, q, n)
        f = basic_hypergeometric_phi(
            [q ** (-n), a1 * z, a1 / z],
            [a1 * a2, a1 * a3],
            q,
            q,
            n,
        )
        return pref * f


class AlSalamChihara(_AskeyWilsonChain):
    """Askey-Wilson restricted by a3 = a4 = 0."""

    spec = FamilySpec(
        id=FamilyId.AL_SALAM_CHIHARA,
        ks_tag="KS3.8",
        eta_kind="cos x",
        interval=(0.0, math.pi),
        n_params=2,
        uses_q=True,
        uses_phi=False,
        param_names=("a1", "a2"),
    )

    def closure(self, p: ParamSet) -> ClosurePolys:
        q = p.q
        s2 = _s2(q)
        lin = (p.a[0] + p.a[1]).real
        return ClosurePolys(
            r1=(s2, s2),
            r0=(s2, 2.0 * s2, s2),
            rm1=(0.0, -0.5 * s2 * lin, -0.5 * s2 * lin),
        )

    def c_n(self, p: ParamSet, n: int):
        return 2.0**n

    def a_rec(self, p: ParamSet, n: int):
        return 0.5 * (p.a[0] + p.a[1]) * p.q**n

    def b_rec(self, p: ParamSet, n: int):
        q = p.q
        return 0.25 * (1.0 - q**n) * (1.0 - p.a[0] * p.a[1] * q ** (n - 1))

    def h0(self, p: ParamSet) -> float:
        q = p.q
        a12 = p.a[0] * p.a[1]
        return (
            2.0 * math.pi / (q_pochhammer_inf(q, q) * q_pochhammer_inf(a12, q))
        ).real

    def h0_over_hn(self, p: ParamSet, n: int) -> float:
        q = p.q
        a12 = p.a[0] * p.a[1]
        return (1.0 / (q_pochhammer(q, q, n) * q_pochhammer(a12, q, n))).real

    def series_eval_x(self, p: ParamSet, n: int, x) -> complex:
        q = p.q
        a1 = self._pivot(p)
        z = _z_of(x)
        if a1 is None:
            return self._series_qh_style(p, n, z)
        rest = list(p.a)
        rest.remove(a1)
        a2 = rest[0]
        pref = a1 ** (-n) * q_pochhammer(a1 * a2, q, n)
        f = basic_hypergeometric_phi(
            [q ** (-n), a1 * z, a1 / z],
            [a1 * a2, 0.0],
            q,
            q,
            n,
        )
        return pref * f


class ContinuousBigQHermite(_AskeyWilsonChain):
    """Al-Salam-Chihara restricted by a2 = 0; one real parameter -1 < a < 1."""

    spec = FamilySpec(
        id=FamilyId.CONTINUOUS_BIG_Q_HERMITE,
        ks_tag="KS3.18",
        eta_kind="cos x",
        interval=(0.0, math.pi),
        n_params=1,
        uses_q=True,
        uses_phi=False,
        param_names=("a",),
    )
    real_params_only = True

    def closure(self, p: ParamSet) -> ClosurePolys:
        q = p.q
        s2 = _s2(q)
        a = p.a[0].real
        return ClosurePolys(
            r1=(s2, s2),
            r0=(s2, 2.0 * s2, s2),
            rm1=(0.0, -0.5 * s2 * a, -0.5 * s2 * a),
        )

    def c_n(self, p: ParamSet, n: int):
        return 2.0**n

    def a_rec(self, p: ParamSet, n: int):
        return 0.5 * p.a[0].real * p.q**n

    def b_rec(self, p: ParamSet, n: int):
        return 0.25 * (1.0 - p.q**n)

    def h0(self, p: ParamSet) -> float:
        return 2.0 * math.pi / q_pochhammer_inf(p.q, p.q).real

    def h0_over_hn(self, p: ParamSet, n: int) -> float:
        return (1.0 / q_pochhammer(p.q, p.q, n)).real

    def series_eval_x(self, p: ParamSet, n: int, x) -> complex:
        q = p.q
        a = p.a[0]
        z = _z_of(x)
        if a == 0:
            return self._series_qh_style(p, n, z)
        f = basic_hypergeometric_phi(
            [q ** (-n), a * z, a / z],
            [0.0, 0.0],
            q,
            q,
            n,
        )
        return a ** (-n) * f


class ContinuousQHermite(_AskeyWilsonChain):
    """No parameters beyond q itself."""

    spec = FamilySpec(
        id=FamilyId.CONTINUOUS_Q_HERMITE,
        ks_tag="KS3.26",
        eta_kind="cos x",
        interval=(0.0, math.pi),
        n_params=0,
        uses_q=True,
        uses_phi=False,
        param_names=(),
    )

    def shifted(self, p: ParamSet, k: int = 1) -> ParamSet:
        return p

    def closure(self, p: ParamSet) -> ClosurePolys:
        s2 = _s2(p.q)
        return ClosurePolys(
            r1=(s2, s2),
            r0=(s2, 2.0 * s2, s2),
            rm1=(0.0, 0.0, 0.0),
        )

    def c_n(self, p: ParamSet, n: int):
        return 2.0**n

    def a_rec(self, p: ParamSet, n: int):
        return 0.0

    def b_rec(self, p: ParamSet, n: int):
        return 0.25 * (1.0 - p.q**n)

    def h0(self, p: ParamSet) -> float:
        return 2.0 * math.pi / q_pochhammer_inf(p.q, p.q).real

    def h0_over_hn(self, p: ParamSet, n: int) -> float:
        return (1.0 / q_pochhammer(p.q, p.q, n)).real

    def series_eval_x(self, p: ParamSet, n: int, x) -> complex:
        return self._series_qh_style(p, n, _z_of(x))


class ContinuousQJacobi(Family):
    """Two real exponent parameters alpha, beta >= -1/2; delta = (1, 1)."""

    spec = FamilySpec(
        id=FamilyId.CONTINUOUS_Q_JACOBI,
        ks_tag="KS3.10",
        eta_kind="cos x",
        interval=(0.0, math.pi),
        n_params=2,
        uses_q=True,
        uses_phi=False,
        param_names=("alpha", "beta"),
    )

    def validate(self, p: ParamSet) -> None:
        require(len(p.a) == 2, f"continuous q-Jacobi needs (alpha, beta), got {len(p.a)}")
        require(p.q is not None, "q is required")
        require(0.0 < p.q < 1.0, f"q must lie in (0,1), got {p.q}")
        for name, v in zip(("alpha", "beta"), p.a):
            require(abs(v.imag) < 1e-12, f"{name} must be real, got {v}")
            require(v.real >= -0.5, f"{name} >= -1/2 violated ({name} = {v.real})")

    def shifted(self, p: ParamSet, k: int = 1) -> ParamSet:
        al, be = self._ab(p)
        return ParamSet(a=(al + k, be + k), q=p.q)

    def _ab(self, p: ParamSet):
        return p.a[0].real, p.a[1].real

    def _aw_params(self, p: ParamSet):
        """The four equivalent Askey-Wilson parameters."""
        al, be = self._ab(p)
        q = p.q
        return (
            q ** (0.5 * (al + 0.5)),
            q ** (0.5 * (al + 1.5)),
            -(q ** (0.5 * (be + 0.5))),
            -(q ** (0.5 * (be + 1.5))),
        )

    def V(self, p: ParamSet, w) -> complex:
        z = _z_of(w)
        z2 = z * z
        den = (1.0 - z2) * (1.0 - p.q * z2)
        if den == 0:
            raise SingularityError(f"potential singular at x = {w}")
        num = complex(1.0)
        for ai in self._aw_params(p):
            num *= 1.0 - ai * z
        return num / den

    def energy(self, p: ParamSet, n: int) -> float:
        al, be = self._ab(p)
        q = p.q
        return (q ** (-n) - 1.0) * (1.0 - q ** (n + al + be + 1))

    def closure(self, p: ParamSet) -> ClosurePolys:
        al, be = self._ab(p)
        q = p.q
        s2 = _s2(q)
        u = 1.0 + q ** (al + be + 1)
        lead = (
            -0.5
            * s2
            * q**0.25
            * (1.0 + q**0.5)
            * (q ** (0.5 * al) - q ** (0.5 * be))
            * (1.0 - q ** (0.5 * (al + be)))
        )
        shift = u + (1.0 + q) * q ** (0.5 * (al + be))
        return ClosurePolys(
            r1=(s2, s2 * u),
            r0=(s2, 2.0 * s2 * u, s2 * (u * u - (1.0 + q) ** 2 * q ** (al + be))),
            rm1=(0.0, lead, lead * shift),
        )

    def c_n(self, p: ParamSet, n: int):
        al, be = self._ab(p)
        q = p.q
        num = 2.0**n * q ** (0.5 * (al + 0.5) * n) * q_pochhammer(
            q ** (n + al + be + 1), q, n
        )
        den = (
            q_pochhammer(q, q, n)
            * q_pochhammer(-(q ** (0.5 * (al + be + 1))), q, n)
            * q_pochhammer(-(q ** (0.5 * (al + be + 2))), q, n)
        )
        return (num / den).real

    def a_rec(self, p: ParamSet, n: int):
        al, be = self._ab(p)
        q = p.q
        k = q ** (0.5 * (al + 0.5))
        t1 = (
            (1.0 - q ** (n + al + 1))
            * (1.0 - q ** (n + al + be + 1))
            * (1.0 + q ** (n + 0.5 * (al + be + 1)))
            * (1.0 + q ** (n + 0.5 * (al + be + 2)))
            / (k * (1.0 - q ** (2 * n + al + be + 1)) * (1.0 - q ** (2 * n + al + be + 2)))
        )
        t2 = (
            k
            * (1.0 - q**n)
            * (1.0 - q ** (n + be))
            * (1.0 + q ** (n + 0.5 * (al + be)))
            * (1.0 + q ** (n + 0.5 * (al + be + 1)))
            / ((1.0 - q ** (2 * n + al + be)) * (1.0 - q ** (2 * n + al + be + 1)))
        )
        return 0.5 * (k + 1.0 / k - t1 - t2)

    def b_rec(self, p: ParamSet, n: int):
        al, be = self._ab(p)
        q = p.q
        num = (
            (1.0 - q**n)
            * (1.0 - q ** (n + al))
            * (1.0 - q ** (n + be))
            * (1.0 - q ** (n + al + be))
            * (1.0 + q ** (n + 0.5 * (al + be - 1)))
            * (1.0 + q ** (n + 0.5 * (al + be))) ** 2
            * (1.0 + q ** (n + 0.5 * (al + be + 1)))
        )
        den = (
            4.0
            * (1.0 - q ** (2 * n + al + be - 1))
            * (1.0 - q ** (2 * n + al + be)) ** 2
            * (1.0 - q ** (2 * n + al + be + 1))
        )
        return num / den

    def f_shift(self, p: ParamSet, n: int):
        al, be = self._ab(p)
        q = p.q
        return (
            q ** (0.5 * (al + 1.5))
            * q ** (-n)
            * (1.0 - q ** (n + al + be + 1))
            / ((1.0 + q ** (0.5 * (al + be + 1))) * (1.0 + q ** (0.5 * (al + be + 2))))
        )

    def b_shift(self, p: ParamSet, n: int):
        al, be = self._ab(p)
        q = p.q
        return (
            q ** (-0.5 * (al + 1.5))
            * q ** (n + 1)
            * (q ** (-(n + 1)) - 1.0)
            * (1.0 + q ** (0.5 * (al + be + 1)))
            * (1.0 + q ** (0.5 * (al + be + 2)))
        )

    def h0(self, p: ParamSet) -> float:
        al, be = self._ab(p)
        q = p.q
        num = q_pochhammer_inf(q ** (0.5 * (al + be + 2)), q) * q_pochhammer_inf(
            q ** (0.5 * (al + be + 3)), q
        )
        den = (
            q_pochhammer_inf(q, q)
            * q_pochhammer_inf(q ** (al + 1), q)
            * q_pochhammer_inf(q ** (be + 1), q)
            * q_pochhammer_inf(-(q ** (0.5 * (al + be + 1))), q)
            * q_pochhammer_inf(-(q ** (0.5 * (al + be + 2))), q)
        )
        return (2.0 * math.pi * num / den).real

    def h0_over_hn(self, p: ParamSet, n: int) -> float:
        al, be = self._ab(p)
        q = p.q
        num = (
            (1.0 - q ** (2 * n + al + be + 1))
            * q_pochhammer(q, q, n)
            * q_pochhammer(q ** (al + be + 1), q, n)
            * q_pochhammer(-(q ** (0.5 * (al + be + 1))), q, n)
        )
        den = (
            (1.0 - q ** (al + be + 1))
            * q_pochhammer(q ** (al + 1), q, n)
            * q_pochhammer(q ** (be + 1), q, n)
            * q_pochhammer(-(q ** (0.5 * (al + be + 3))), q, n)
        )
        return (num / den).real * q ** (-(al + 0.5) * n)

    def phi0(self, p: ParamSet, x):
        al, be = self._ab(p)
        q = p.q
        sq = math.sqrt(q)
        x = np.asarray(x, dtype=float)
        z = np.exp(1j * x)
        num = np.abs(qpoch_inf_vec(z * z, q))
        den = np.abs(qpoch_inf_vec(q ** (0.5 * (al + 0.5)) * z, sq)) * np.abs(
            qpoch_inf_vec(-(q ** (0.5 * (be + 0.5))) * z, sq)
        )
        out = num / den
        return float(out) if out.ndim == 0 else out

    def weight_square(self, p: ParamSet, w) -> complex:
        al, be = self._ab(p)
        q = p.q
        sq = math.sqrt(q)
        z = _z_of(w)
        out = q_pochhammer_inf(z * z, q) * q_pochhammer_inf(1.0 / (z * z), q)
        for base in (q ** (0.5 * (al + 0.5)), -(q ** (0.5 * (be + 0.5)))):
            out /= q_pochhammer_inf(base * z, sq) * q_pochhammer_inf(base / z, sq)
        return out

    def level_from_energy(self, p: ParamSet, energy: float) -> float:
        al, be = self._ab(p)
        q = p.q
        b = q ** (al + be + 1)
        if not (0.0 < b < 1.0):
            raise ValueError(
                f"number-operator inversion needs 0 < q^(alpha+beta+1) < 1, got {b}"
            )
        hp = energy + 1.0 + b
        qn = 0.5 / b * (hp - math.sqrt(hp * hp - 4.0 * b))
        return math.log(qn) / math.log(q)

    def series_eval_x(self, p: ParamSet, n: int, x) -> complex:
        al, be = self._ab(p)
        q = p.q
        k = q ** (0.5 * (al + 0.5))
        z = _z_of(x)
        pref = q_pochhammer(q ** (al + 1), q, n) / q_pochhammer(q, q, n)
        f = basic_hypergeometric_phi(
            [q ** (-n), q ** (n + al + be + 1), k * z, k / z],
            [
                q ** (al + 1),
                -(q ** (0.5 * (al + be + 1))),
                -(q ** (0.5 * (al + be + 2))),
            ],
            q,
            q,
            n,
        )
        return pref * f


class ContinuousQLaguerre(Family):
    """q-Jacobi with beta -> infinity; one real parameter alpha >= -1/2."""

    spec = FamilySpec(
        id=FamilyId.CONTINUOUS_Q_LAGUERRE,
        ks_tag="KS3.19",
        eta_kind="cos x",
        interval=(0.0, math.pi),
        n_params=1,
        uses_q=True,
        uses_phi=False,
        param_names=("alpha",),
    )

    def validate(self, p: ParamSet) -> None:
        require(len(p.a) == 1, f"continuous q-Laguerre needs alpha, got {len(p.a)}")
        require(p.q is not None, "q is required")
        require(0.0 < p.q < 1.0, f"q must lie in (0,1), got {p.q}")
        v = p.a[0]
        require(abs(v.imag) < 1e-12, f"alpha must be real, got {v}")
        require(v.real >= -0.5, f"alpha >= -1/2 violated (alpha = {v.real})")

    def shifted(self, p: ParamSet, k: int = 1) -> ParamSet:
        return ParamSet(a=(p.a[0].real + k,), q=p.q)

    def _al(self, p: ParamSet) -> float:
        return p.a[0].real

    def V(self, p: ParamSet, w) -> complex:
        al = self._al(p)
        q = p.q
        z = _z_of(w)
        z2 = z * z
        den = (1.0 - z2) * (1.0 - q * z2)
        if den == 0:
            raise SingularityError(f"potential singular at x = {w}")
        return (
            (1.0 - q ** (0.5 * (al + 0.5)) * z)
            * (1.0 - q ** (0.5 * (al + 1.5)) * z)
            / den
        )

    def energy(self, p: ParamSet, n: int) -> float:
        return p.q ** (-n) - 1.0

    def closure(self, p: ParamSet) -> ClosurePolys:
        al = self._al(p)
        q = p.q
        s2 = _s2(q)
        lead = -0.5 * s2 * q ** (0.5 * (al + 0.5)) * (1.0 + q**0.5)
        return ClosurePolys(
            r1=(s2, s2),
            r0=(s2, 2.0 * s2, s2),
            rm1=(0.0, lead, lead),
        )

    def c_n(self, p: ParamSet, n: int):
        al = self._al(p)
        q = p.q
        return 2.0**n * q ** (0.5 * (al + 0.5) * n) / q_pochhammer(q, q, n).real

    def a_rec(self, p: ParamSet, n: int):
        al = self._al(p)
        q = p.q
        return 0.5 * q ** (n + 0.5 * (al + 0.5)) * (1.0 + q**0.5)

    def b_rec(self, p: ParamSet, n: int):
        al = self._al(p)
        q = p.q
        return 0.25 * (1.0 - q**n) * (1.0 - q ** (n + al))

    def f_shift(self, p: ParamSet, n: int):
        al = self._al(p)
        return p.q ** (0.5 * (al + 1.5)) * p.q ** (-n)

    def b_shift(self, p: ParamSet, n: int):
        al = self._al(p)
        q = p.q
        return q ** (-0.5 * (al + 1.5)) * q ** (n + 1) * (q ** (-(n + 1)) - 1.0)

    def h0(self, p: ParamSet) -> float:
        al = self._al(p)
        q = p.q
        return (
            2.0
            * math.pi
            / (q_pochhammer_inf(q, q) * q_pochhammer_inf(q ** (al + 1), q))
        ).real

    def h0_over_hn(self, p: ParamSet, n: int) -> float:
        al = self._al(p)
        q = p.q
        return (
            q_pochhammer(q, q, n) / q_pochhammer(q ** (al + 1), q, n)
        ).real * q ** (-(al + 0.5) * n)

    def phi0(self, p: ParamSet, x):
        al = self._al(p)
        q = p.q
        sq = math.sqrt(q)
        x = np.asarray(x, dtype=float)
        z = np.exp(1j * x)
        num = np.abs(qpoch_inf_vec(z * z, q))
        den = np.abs(qpoch_inf_vec(q ** (0.5 * (al + 0.5)) * z, sq))
        out = num / den
        return float(out) if out.ndim == 0 else out

    def weight_square(self, p: ParamSet, w) -> complex:
        al = self._al(p)
        q = p.q
        sq = math.sqrt(q)
        base = q ** (0.5 * (al + 0.5))
        z = _z_of(w)
        out = q_pochhammer_inf(z * z, q) * q_pochhammer_inf(1.0 / (z * z), q)
        return out / (
            q_pochhammer_inf(base * z, sq) * q_pochhammer_inf(base / z, sq)
        )

    def level_from_energy(self, p: ParamSet, energy: float) -> float:
        return -math.log(energy + 1.0) / math.log(p.q)

    def series_eval_x(self, p: ParamSet, n: int, x) -> complex:
        al = self._al(p)
        q = p.q
        k = q ** (0.5 * (al + 0.5))
        z = _z_of(x)
        pref = q_pochhammer(q ** (al + 1), q, n) / q_pochhammer(q, q, n)
        f = basic_hypergeometric_phi(
            [q ** (-n), k * z, k / z],
            [q ** (al + 1), 0.0],
            q,
            q,
            n,
        )
        return pref * f
