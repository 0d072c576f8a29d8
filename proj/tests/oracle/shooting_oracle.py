"""Independent shooting oracle for retreating semi-waves.

Integrates the first-order system q' = p, p' = (c p - f(q)) / d backward in z
from the saddle (xi, 0) along its stable eigendirection until q reaches delta,
then solves p(delta) - (delta/d) c = 0 with Brent's method.  Shares no code
with the C++ phase-plane solver; the printed values are frozen into tests.
"""
import math
from scipy.integrate import solve_ivp
from scipy.optimize import brentq


def logistic(r=1.0, shift=0.0):
    # r u (1 + shift - u); stable zero 1 + shift
    return (lambda u: r * u * (1.0 + shift - u),
            lambda u: r * (1.0 + shift - 2.0 * u), 1.0 + shift)


def endpoint_slope(c, d, delta, f=logistic()):
    fn, dfn, xi = f
    lam = (c - math.sqrt(c * c - 4.0 * d * dfn(xi))) / (2.0 * d)
    eta = 1e-9 * (delta - xi)
    y0 = [xi + eta, lam * eta]

    def rhs(z, y):
        return [y[1], (c * y[1] - fn(y[0])) / d]

    def hit(z, y):
        return y[0] - delta
    hit.terminal = True
    sol = solve_ivp(rhs, [0.0, -1e4], y0, method="DOP853", rtol=1e-13,
                    atol=1e-16, events=hit)
    return sol.y_events[0][0][1]


def c_star(d, delta, f=logistic()):
    fn, _, xi = f
    xi_fun = lambda c: endpoint_slope(c, d, delta, f) - delta * c / d
    # closed-form c0 for the logistic family via exact integral
    lo = -2.0
    while xi_fun(lo) <= 0:
        lo *= 2
    return brentq(xi_fun, lo, 0.0, xtol=1e-15, rtol=1e-15, maxiter=200)


if __name__ == "__main__":
    print("P_0(2), d=1:", endpoint_slope(0.0, 1.0, 2.0), -math.sqrt(5 / 3))
    for d in (0.5, 1.0, 2.0):
        print("d=%g delta=2 c*=%.15f" % (d, c_star(d, 2.0)))
    for delta in (1.0001, 1.001, 1.01, 1.1, 1.5, 2.0, 2.5, 3.0):
        print("delta=%g c*=%.15e" % (delta, c_star(1.0, delta)))
    cs = c_star(1.0, 2.0)
    for eps in (0.1, 0.05, 0.025):
        lo = c_star(1.0, 2.0, logistic(1.0, -eps))
        hi = c_star(1.0, 2.0, logistic(1.0, eps))
        print("eps=%g c1*=%.12f c2*=%.12f gaps %.3e %.3e" % (eps, lo, hi, cs - lo, hi - cs))
    h = 1e-5
    gp = (endpoint_slope(cs + h, 1, 2) - endpoint_slope(cs - h, 1, 2)) / (2 * h) * 0.5
    print("G'(c*) =", gp)
    # sequences
    for M in (10,):
        cu, cl = 0.0, cs - 1.0
        for n in range(0, 2001):
            su = endpoint_slope(cu, 1, 2); sl = endpoint_slope(cl, 1, 2)
            nu = 0.5 * su + 1.0 / (M + n); nl = 0.5 * sl - 1.0 / (M + n)
            if n < 5 or n % 200 == 0:
                print(n, cu - cs, cs - cl, "step", cu - nu, nl - cl, 1 / (M + n) ** 2)
            if max(cu - cs, cs - cl) <= 1e-2 and n > 0 and n % 50 == 0:
                print("gap<=1e-2 by n", n); break
            cu, cl = nu, nl
