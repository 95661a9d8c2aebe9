"""Symbolic oracle for the conserved-energy cubic sign.

Executed before the solver was built and kept as a regression guard: under
the evolution convention u_t = -H(u_xx) + u*u_x, the functional

    E_c(u) = 1/2 int |D^(1/2) u|^2 + (c/6) int u^3

has dE/dt identically zero for c = -1 and not for c = +1.  The computation
is exact: fields are finite combinations of harmonics with symbolic
amplitudes, products are convolutions on the integer frequency lattice,
and the integral picks out the zero mode.
"""

import sympy as sp

K = 3  # harmonics per field; 3 already exhibits the generic cubic interactions


def _symbolic_field():
    a = sp.symbols(f"a1:{K + 1}", real=True)
    b = sp.symbols(f"b1:{K + 1}", real=True)
    u = {}
    for k in range(1, K + 1):
        u[k] = (a[k - 1] - sp.I * b[k - 1]) / 2
        u[-k] = (a[k - 1] + sp.I * b[k - 1]) / 2
    return u


def _mult(f, g):
    out = {}
    for kf, cf in f.items():
        for kg, cg in g.items():
            out[kf + kg] = out.get(kf + kg, 0) + cf * cg
    return out


def _dx(f):
    return {k: sp.I * k * c for k, c in f.items()}


def _hilbert(f):
    return {k: -sp.I * sp.sign(k) * c for k, c in f.items() if k != 0}


def _abs_deriv(f):
    return {k: abs(k) * c for k, c in f.items()}


def _integral(f):
    return 2 * sp.pi * f.get(0, 0)


def _energy_rate(cubic_sign):
    u = _symbolic_field()
    u_t = {k: -c for k, c in _hilbert(_dx(_dx(u))).items()}
    for k, c in _mult(u, _dx(u)).items():
        u_t[k] = u_t.get(k, 0) + c
    quad_rate = _integral(_mult(_abs_deriv(u), u_t))
    cubic_rate = _integral(_mult(_mult(u, u), u_t))
    return sp.simplify(sp.expand(quad_rate + sp.Rational(cubic_sign, 2) * cubic_rate))


def test_cubic_sign_minus_one_is_conserved():
    assert _energy_rate(-1) == 0


def test_cubic_sign_plus_one_is_not_conserved():
    rate = _energy_rate(+1)
    assert rate != 0
    # the defect is a genuine cubic polynomial in the amplitudes
    assert rate.free_symbols


def test_recorded_defect_polynomial():
    # frozen from the pre-build oracle run: the +1 defect at K = 3
    a1, a2, a3 = sp.symbols("a1 a2 a3", real=True)
    b1, b2, b3 = sp.symbols("b1 b2 b3", real=True)
    expected = sp.pi * (-a1**2 * b2 + 2 * a1 * a2 * b1 - 4 * a1 * a2 * b3
                        + 4 * a1 * a3 * b2 + 4 * a2 * a3 * b1 + b1**2 * b2
                        + 4 * b1 * b2 * b3)
    assert sp.simplify(_energy_rate(+1) - expected) == 0
