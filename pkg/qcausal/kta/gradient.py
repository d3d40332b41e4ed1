# Analytic derivatives of f = -log KTA with respect to Gaussian widths.
#
# With A = Tr[K~_X K~_Y], B = Tr[K~_X^2], C = Tr[K~_Y^2]:
#   df/dK_X = -(K~_Y / A - K~_X / B),  df/dK_Y = -(K~_X / A - K~_Y / C)
# (centering drops out since H K~ H = K~). K is symmetric, so the gradient
# over its independent entries is G = 2 D - D o I, contracted with dK over
# the upper triangle.
import numpy as np

from qcausal.exceptions import DegenerateDataError, UnsupportedKernelError
from qcausal.kernels.gaussian import as_samples, center, gaussian_kernel_matrix, GaussianKernelParams


def symmetric_gradient(D):
    return 2.0 * D - np.diag(np.diag(D))


def contract(G, dK):
    """
    sum over i <= j of G_ij dK_ij
    """
    return float(np.sum(np.triu(G * dK)))


def _width_derivatives(data, widths, scaling):
    """
    K and dK/dwidth_c for the product Gaussian exp(-sum_c (scaling dx_c)^2 / (2 width_c^2))
    """
    scaled = scaling * data
    K = gaussian_kernel_matrix(scaled / widths, GaussianKernelParams(1.0)).values
    derivatives = []
    for c, w in enumerate(widths):
        diff = scaled[:, c][:, np.newaxis] - scaled[:, c][np.newaxis, :]
        derivatives.append(K * diff ** 2 / w ** 3)
    return K, derivatives


def _ordered_widths(family, data):
    """
    The widths in column order; the keys of family.widths index the columns of `data`
    """
    widths = np.array([family.widths[c] for c in sorted(family.widths)], dtype=float)
    if len(widths) != data.shape[1]:
        raise UnsupportedKernelError(f"{len(widths)} widths for {data.shape[1]} columns")
    return widths


def _widths_of(family, data):
    if not getattr(family, 'differentiable', False):
        raise UnsupportedKernelError(f"{family!r} has no analytic parameter derivative")
    if family.widths is None:
        raise UnsupportedKernelError("the gradient is taken with respect to explicit per-column widths")
    return _ordered_widths(family, data)


def kta_loss_and_gradient(data_x, data_y, widths_x, widths_y, scaling=1.0, scaling_y=None):
    """
    f = -log KTA and (df/dwidths_x, df/dwidths_y) for product Gaussian kernels.
    `scaling_y` defaults to `scaling`.
    """
    data_x, data_y = as_samples(data_x), as_samples(data_y)
    widths_x = np.atleast_1d(np.asarray(widths_x, dtype=float))
    widths_y = np.atleast_1d(np.asarray(widths_y, dtype=float))
    Kx, dKx = _width_derivatives(data_x, widths_x, scaling)
    Ky, dKy = _width_derivatives(data_y, widths_y, scaling if scaling_y is None else scaling_y)
    Kx_c = center(Kx).values
    Ky_c = center(Ky).values
    A = float(np.sum(Kx_c * Ky_c))
    B = float(np.sum(Kx_c * Kx_c))
    C = float(np.sum(Ky_c * Ky_c))
    if A <= 0 or B <= 0 or C <= 0:
        raise DegenerateDataError(f"KTA is zero or undefined (A={A:.3e}, B={B:.3e}, C={C:.3e})")
    loss = -(np.log(A) - 0.5 * np.log(B) - 0.5 * np.log(C))
    Gx = symmetric_gradient(-(Ky_c / A - Kx_c / B))
    Gy = symmetric_gradient(-(Kx_c / A - Ky_c / C))
    grad_x = np.array([contract(Gx, dK) for dK in dKx])
    grad_y = np.array([contract(Gy, dK) for dK in dKy])
    return float(loss), grad_x, grad_y


def kta_gradient(data_x, data_y, family_x, family_y):
    """
    (df/dtheta, df/dphi) for the Gaussian families of X (widths theta) and Y (widths phi)
    """
    data_x, data_y = as_samples(data_x), as_samples(data_y)
    widths_x = _widths_of(family_x, data_x)
    widths_y = _widths_of(family_y, data_y)
    _, grad_x, grad_y = kta_loss_and_gradient(data_x, data_y, widths_x, widths_y,
                                              family_x.scaling, family_y.scaling)
    return grad_x, grad_y
