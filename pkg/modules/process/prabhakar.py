import math

from modules import config
from modules.dist import GenIParams, quad_checked
from modules.specfun import ml
from modules.utils import DomainError, as_finite

from .state import state_prob


def prabhakar_integral(rho, mu, xi, omega, f, x):
    """Prabhakar integral of ``f`` at ``x``.

        int_0^x (x - y)^(mu - 1) E^xi_{rho, mu}(omega (x - y)^rho) f(y) dy

    The substitution u = (x - y)^mu turns it into

        (1 / mu) int_0^(x^mu) E^xi_{rho, mu}(omega u^(rho / mu)) f(x - u^(1 / mu)) du,

    which removes the kernel singularity at y = x. xi = 0 leaves the
    Riemann-Liouville integral of order mu.

    Args:
        rho (float): Kernel order, > 0.
        mu (float): Integral order, > 0.
        xi (float): Prabhakar exponent.
        omega (float): Kernel coefficient.
        f (callable): Integrand on (0, x); may be singular at 0.
        x (float): Upper limit, >= 0.

    Returns:
        float: The integral.

    Raises:
        DomainError: For rho <= 0, mu <= 0 or x < 0.
        QuadratureError: If the quadrature does not converge.
    """
    rho, mu, xi = as_finite(rho, "rho"), as_finite(mu, "mu"), as_finite(xi, "xi")
    omega, x = as_finite(omega, "omega"), as_finite(x, "x")
    if rho <= 0.0 or mu <= 0.0:
        raise DomainError("rho and mu must be positive")
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if x == 0.0:
        return 0.0

    def integrand(u):
        y = x - u ** (1.0 / mu)
        if y <= 0.0:
            return 0.0
        return ml(rho, mu, xi, omega * u ** (rho / mu)) * f(y)

    tol = config.quadrature["kernel_abs_tol"]
    return quad_checked(integrand, 0.0, x ** mu, abs_tol=tol, rel_tol=tol) / mu


def volterra_rhs(p: GenIParams, k, t):
    """lam^delta times the Prabhakar integral of p_(k-1) at t.

    The state probabilities solve p_k = lam^delta E^delta_{nu, nu delta, -lam; 0+} p_(k-1),
    so this returns a quadrature value of p_k(t) for k >= 1.
    """
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    integral = prabhakar_integral(
        p.nu, p.nu * p.delta, p.delta, -p.lam, lambda y: state_prob(p, k - 1, y), t
    )
    return p.lam ** p.delta * integral


def product_identity(alpha, beta, gamma, nu, sigma, a, x):
    """Both sides of the Prabhakar convolution identity.

        int_0^x (x - t)^(beta - 1) E^gamma_{alpha, beta}(a (x - t)^alpha) t^(nu - 1) E^sigma_{alpha, nu}(a t^alpha) dt
            = x^(beta + nu - 1) E^(gamma + sigma)_{alpha, beta + nu}(a x^alpha)

    Returns:
        tuple[float, float]: (quadrature of the left side, closed right side).
    """
    left = prabhakar_integral(
        alpha, beta, gamma, a, lambda t: t ** (nu - 1.0) * ml(alpha, nu, sigma, a * t ** alpha), x
    )
    right = ml(alpha, beta + nu, gamma + sigma, a * x ** alpha, (beta + nu - 1.0) * math.log(x))
    return left, right
