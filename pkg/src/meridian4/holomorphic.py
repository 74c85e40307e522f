"""Radially holomorphic functions on R^4 via the complex lift.

Every function here is determined by a complex-analytic function w(z) on the
upper half plane: for x = x0 + rho*I the quaternionic value is
w(x0 + i*rho) re-embedded along the axis I.  Powers, exp, cos, sin and the
principal log are provided with exact derivative and primitive tables, and
arbitrary real-linear combinations of them stay inside the table.

The radial derivative f' = (1/2)(d/dx0 - I d/drho)f coincides with the
complex derivative of the lift, so each RadialFunction carries its lift's
derivative both as a callable (dlift) and, where registered, as another
RadialFunction (derivative()).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import BranchCut, OnAxis, Pole, StepTooLarge, Unsupported
from .quaternion import Quaternion, axial_split

__all__ = [
    "MeridianValue",
    "RadialFunction",
    "MoebiusRealCoeffs",
    "eval_lift",
    "radial_derivative",
    "antiholomorphy_residual",
    "elementary",
    "qpow",
    "qexp",
    "qcos",
    "qsin",
    "qln",
    "conjugate",
    "moebius",
    "moebius_potential",
    "primitive",
    "default_fd_step",
]

_ONAXIS_TOL = 1e-12


@dataclass(frozen=True)
class MeridianValue:
    """Value a + b*I in the meridian half plane (b signed)."""
    a: float
    b: float


@dataclass(frozen=True)
class RadialFunction:
    """A radially holomorphic function presented through its complex lift.

    lift   : z -> w(z), the defining analytic function
    dlift  : z -> w'(z), or None when no analytic derivative is registered
    deriv  : thunk producing the derivative as a RadialFunction, if registered
    prim   : thunk producing a primitive (constant 0), if registered
    """
    name: str
    lift: Callable[[complex], complex]
    dlift: Optional[Callable[[complex], complex]] = None
    deriv: Optional[Callable[[], "RadialFunction"]] = field(default=None, repr=False)
    prim: Optional[Callable[[], "RadialFunction"]] = field(default=None, repr=False)

    def derivative(self) -> "RadialFunction":
        if self.deriv is None:
            raise Unsupported(f"no registered derivative for {self.name}")
        return self.deriv()

    def primitive(self) -> "RadialFunction":
        if self.prim is None:
            raise Unsupported(f"no registered primitive for {self.name}")
        return self.prim()

    # real-linear algebra on the table ------------------------------------

    def __add__(self, other: "RadialFunction") -> "RadialFunction":
        f, g = self, other
        return RadialFunction(
            name=f"({f.name} + {g.name})",
            lift=lambda z: f.lift(z) + g.lift(z),
            dlift=(None if f.dlift is None or g.dlift is None
                   else lambda z: f.dlift(z) + g.dlift(z)),
            deriv=(None if f.deriv is None or g.deriv is None
                   else lambda: f.derivative() + g.derivative()),
            prim=(None if f.prim is None or g.prim is None
                  else lambda: f.primitive() + g.primitive()),
        )

    def __sub__(self, other: "RadialFunction") -> "RadialFunction":
        return self + (-1.0) * other

    def __neg__(self) -> "RadialFunction":
        return (-1.0) * self

    def __rmul__(self, c) -> "RadialFunction":
        c = float(c)
        f = self
        return RadialFunction(
            name=f"{c:g}*{f.name}",
            lift=lambda z: c * f.lift(z),
            dlift=None if f.dlift is None else (lambda z: c * f.dlift(z)),
            deriv=None if f.deriv is None else (lambda: c * f.derivative()),
            prim=None if f.prim is None else (lambda: c * f.primitive()),
        )


def default_fd_step(x0: float, rho: float) -> float:
    """Package-wide finite-difference step: 1e-4 * max(1, |x0|, rho)."""
    return 1e-4 * max(1.0, abs(x0), rho)


# ---------------------------------------------------------------------------
# atoms: shifted powers, shifted log, exp, trig
# ---------------------------------------------------------------------------

def _pow_guard(z: complex, n: float, d: float) -> complex:
    zz = z + d
    if zz == 0:
        if n < 0:
            raise Pole(f"pole of (x + {d:g})^{n:g} at x = {-d:g}")
        if n != int(n):
            raise BranchCut("non-integer power at its branch point")
    if n != int(n) and zz.imag == 0.0 and zz.real < 0.0:
        raise BranchCut("non-integer power on the negative real half axis")
    return zz


def _spow(d: float, n: float, c: float) -> RadialFunction:
    """c*(x + d)^n, principal branch for non-integer n."""
    if d == 0.0:
        name = f"{c:g}*x^{n:g}" if c != 1.0 else f"x^{n:g}"
    else:
        name = f"{c:g}*(x + {d:g})^{n:g}"

    def lift(z: complex, _d=d, _n=n, _c=c) -> complex:
        zz = _pow_guard(z, _n, _d)
        if _n == 0:
            return complex(_c)
        return _c * zz ** _n

    def dlift(z: complex, _d=d, _n=n, _c=c) -> complex:
        if _n == 0:
            return 0j
        zz = _pow_guard(z, _n - 1, _d)
        return _c * _n * zz ** (_n - 1)

    def deriv(_d=d, _n=n, _c=c) -> RadialFunction:
        if _n == 0:
            return _spow(_d, 0, 0.0)
        return _spow(_d, _n - 1, _c * _n)

    def prim(_d=d, _n=n, _c=c) -> RadialFunction:
        if _n == -1:
            return _sln(_d, _c)
        return _spow(_d, _n + 1, _c / (_n + 1))

    return RadialFunction(name, lift, dlift, deriv, prim)


def _ln_guard(z: complex, d: float) -> complex:
    zz = z + d
    if zz.imag == 0.0 and zz.real <= 0.0:
        raise BranchCut("ln on the closed negative real half axis")
    return zz


def _sln(d: float, c: float) -> RadialFunction:
    """c*ln(x + d), principal branch (arg in (0, pi) off the real axis)."""
    name = f"{c:g}*ln(x + {d:g})" if d != 0.0 else (f"{c:g}*ln(x)" if c != 1.0 else "ln(x)")
    return RadialFunction(
        name,
        lift=lambda z, _d=d, _c=c: _c * cmath.log(_ln_guard(z, _d)),
        dlift=lambda z, _d=d, _c=c: _c / _ln_guard(z, _d),
        deriv=lambda _d=d, _c=c: _spow(_d, -1, _c),
        prim=lambda _d=d, _c=c: _xlnx(_d, _c),
    )


def _xlnx(d: float, c: float) -> RadialFunction:
    """c*((x+d)ln(x+d) - (x+d)): the registered primitive of c*ln(x+d)."""
    name = f"{c:g}*((x+{d:g})ln(x+{d:g}) - (x+{d:g}))"

    def lift(z: complex, _d=d, _c=c) -> complex:
        zz = _ln_guard(z, _d)
        return _c * (zz * cmath.log(zz) - zz)

    return RadialFunction(
        name,
        lift=lift,
        dlift=lambda z, _d=d, _c=c: _c * cmath.log(_ln_guard(z, _d)),
        deriv=lambda _d=d, _c=c: _sln(_d, _c),
        prim=None,
    )


def qpow(n: float) -> RadialFunction:
    """x^n = r^n (cos(n*varphi) + I sin(n*varphi)); integer or principal branch."""
    return _spow(0.0, n, 1.0)


def _trig(phase: int) -> RadialFunction:
    """The cos/sin derivative four-cycle; phase 0 = cos, 1 = -sin, 2 = -cos, 3 = sin."""
    names = {0: "cos(x)", 1: "-sin(x)", 2: "-cos(x)", 3: "sin(x)"}
    fns = {0: cmath.cos, 2: cmath.cos, 1: cmath.sin, 3: cmath.sin}
    sgn = {0: 1.0, 1: -1.0, 2: -1.0, 3: 1.0}
    p = phase % 4
    return RadialFunction(
        names[p],
        lift=lambda z, _p=p: sgn[_p] * fns[_p](z),
        dlift=lambda z, _p=p: sgn[(_p + 1) % 4] * fns[(_p + 1) % 4](z),
        deriv=lambda _p=p: _trig(_p + 1),
        prim=lambda _p=p: _trig(_p + 3),
    )


def qexp() -> RadialFunction:
    """e^x = e^{x0}(cos rho + I sin rho)."""
    f = RadialFunction("exp(x)", lift=cmath.exp, dlift=cmath.exp,
                       deriv=lambda: qexp(), prim=lambda: qexp())
    return f


def qcos() -> RadialFunction:
    return _trig(0)


def qsin() -> RadialFunction:
    return _trig(3)


def qln() -> RadialFunction:
    """ln x = ln r + I*varphi, principal branch; cut on x0 <= 0, rho = 0."""
    return _sln(0.0, 1.0)


_ELEMENTARY = {"qexp": qexp, "qcos": qcos, "qsin": qsin, "qln": qln}


def elementary(name: str, n: Optional[float] = None) -> RadialFunction:
    """Look up a registered elementary function by name.

    qpow requires the exponent n; the others take no parameter.
    """
    if name == "qpow":
        if n is None:
            raise Unsupported("qpow needs an exponent n")
        return qpow(n)
    try:
        builder = _ELEMENTARY[name]
    except KeyError:
        raise Unsupported(f"unknown elementary function {name!r}") from None
    return builder()


def conjugate(f: RadialFunction) -> RadialFunction:
    """Pointwise quaternionic conjugate: radially anti-holomorphic, no derivative."""
    return RadialFunction(
        name=f"conj({f.name})",
        lift=lambda z: f.lift(z).conjugate(),
        dlift=None, deriv=None, prim=None,
    )


# ---------------------------------------------------------------------------
# Moebius transformations with real coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MoebiusRealCoeffs:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c - 1.0) > 1e-12:
            raise ValueError("Moebius coefficients must satisfy ad - bc = 1")


def _mob_pow(c: float, d: float, n: int, coeff: float) -> RadialFunction:
    """coeff/(c x + d)^n with its full derivative chain (c != 0)."""
    name = f"{coeff:g}/({c:g}x + {d:g})^{n}"

    def lift(z: complex) -> complex:
        den = c * z + d
        if den == 0:
            raise Pole(f"pole at x = {-d / c:g}")
        return coeff / den ** n

    return RadialFunction(
        name,
        lift=lift,
        dlift=lambda z: _mob_pow(c, d, n + 1, -n * c * coeff).lift(z),
        deriv=lambda: _mob_pow(c, d, n + 1, -n * c * coeff),
        prim=None,
    )


def moebius(m: MoebiusRealCoeffs) -> RadialFunction:
    """F(x) = (a x + b)(c x + d)^{-1}; real coefficients commute with x."""
    a, b, c, d = m.a, m.b, m.c, m.d
    if c == 0.0:
        # affine map (a x + b)/d
        return _spow(0.0, 1, a / d) + _spow(0.0, 0, b / d)

    def lift(z: complex) -> complex:
        den = c * z + d
        if den == 0:
            raise Pole(f"pole at x = {-d / c:g}")
        return (a * z + b) / den

    # F = a/c + (bc - ad)/c * 1/(cx+d), so F' = (ad - bc)/(cx+d)^2 = 1/(cx+d)^2
    return RadialFunction(
        name=f"({a:g}x + {b:g})({c:g}x + {d:g})^-1",
        lift=lift,
        dlift=lambda z: _mob_pow(c, d, 2, 1.0).lift(z),
        deriv=lambda: _mob_pow(c, d, 2, 1.0),
        prim=None,
    )


def moebius_potential(a: float, d: float) -> RadialFunction:
    """Radially holomorphic potential G = -ln(x + d) + a*x for the c = 1 family.

    Its radial derivative is -1/(x+d) + a, the holomorphic part of the
    anti-holomorphic companion -(conj(x) + d)^{-1} + a.
    """
    return _sln(d, -1.0) + _spow(0.0, 1, a)


# ---------------------------------------------------------------------------
# evaluation and verification
# ---------------------------------------------------------------------------

def eval_lift(f: RadialFunction, x: Quaternion) -> Quaternion:
    """Evaluate f at the quaternion x through the complex lift.

    Off the axis the value is w(x0 + i*rho) re-embedded along the axis of x.
    On the axis the imaginary part of the lift must vanish (real limit);
    otherwise the axial direction would be ambiguous and OnAxis is raised.
    """
    split = axial_split(x)
    w = f.lift(complex(split.a, split.b))
    if split.axis is None:
        if abs(w.imag) > _ONAXIS_TOL * (1.0 + abs(w)):
            raise OnAxis(f"{f.name} has no real limit at x0 = {split.a:g}")
        return Quaternion(w.real, 0.0, 0.0, 0.0)
    ax = split.axis
    return Quaternion(w.real, w.imag * ax.x1, w.imag * ax.x2, w.imag * ax.x3)


def radial_derivative(f: RadialFunction, x0: float, rho: float) -> MeridianValue:
    """f'(x) = (1/2)(d/dx0 - I d/drho) f as a meridian-plane value."""
    if f.dlift is None:
        raise Unsupported(f"no registered derivative for {f.name}")
    w = f.dlift(complex(x0, rho))
    return MeridianValue(w.real, w.imag)


def antiholomorphy_residual(f: RadialFunction, x0: float, rho: float,
                            h: Optional[float] = None) -> float:
    """|(1/2)(d/dx0 + I d/drho) f| by central differences on the lift.

    Vanishes (to O(h^2)) exactly when f is radially holomorphic.
    """
    if rho <= 0.0:
        raise OnAxis("antiholomorphy residual needs rho > 0")
    if h is None:
        h = default_fd_step(x0, rho)
    if h >= rho:
        raise StepTooLarge(f"step {h:g} reaches the axis (rho = {rho:g})")
    z = complex(x0, rho)
    wx0 = (f.lift(z + h) - f.lift(z - h)) / (2.0 * h)
    wrho = (f.lift(z + 1j * h) - f.lift(z - 1j * h)) / (2.0 * h)
    return abs(0.5 * (wx0 + 1j * wrho))


def primitive(f: RadialFunction) -> RadialFunction:
    """Primitive from the registered table (constant of integration 0)."""
    return f.primitive()
