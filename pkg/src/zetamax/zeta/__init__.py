"""Zeta evaluation near the critical line."""
from .euler_maclaurin import euler_maclaurin_grid, euler_maclaurin_zeta
from .riemann_siegel import riemann_siegel, riemann_siegel_Z, theta
from .scan import interval_max_log_abs_zeta, sobolev_check
from .smoothed import critical_line_zeta, poisson_kernel_mass, poisson_smoothed_zeta, zeta_main_sum
from .types import IntervalMax, Method, ZetaValue

__all__ = [
    "IntervalMax", "Method", "ZetaValue", "critical_line_zeta", "euler_maclaurin_grid",
    "euler_maclaurin_zeta", "interval_max_log_abs_zeta", "poisson_kernel_mass",
    "poisson_smoothed_zeta", "riemann_siegel", "riemann_siegel_Z", "sobolev_check", "theta",
    "zeta_main_sum",
]
