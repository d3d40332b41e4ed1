# Kernel families: how the kernel of a variable set is built from its data block.
# Both families carry the scaling parameter gamma, which multiplies the data.
import logging

import numpy as np

from qcausal.configuration import Configuration
from qcausal.exceptions import InputDataError
from qcausal.kernels.gaussian import (GaussianKernelParams, as_samples,
                                      gaussian_kernel_matrix,
                                      median_heuristic_width)
from qcausal.qsim.circuit import CircuitSpec
from qcausal.qsim.emulator import fidelity_kernel_matrix, spec_for

logger = logging.getLogger(__name__)


class KernelFamily(object):
    name = None
    differentiable = False

    def __init__(self, scaling=1.0):
        if not scaling > 0:
            raise InputDataError(f"scaling must be positive, got {scaling}")
        self.scaling = float(scaling)

    def kernel(self, block, columns=None):
        """
        The uncentered kernel of the (n, k) `block`; `columns` are the dataset
        indices of the block's columns
        """
        raise NotImplementedError

    def with_scaling(self, scaling):
        raise NotImplementedError

    def as_dict(self):
        raise NotImplementedError


class GaussianFamily(KernelFamily):
    """
    The classical baseline.

    Without widths, the bandwidth of each variable set is the median heuristic
    of its unscaled block. With per-column widths (a dict from dataset column
    to width), the kernel is the product of one-dimensional Gaussians.
    """
    name = 'gaussian'
    differentiable = True

    def __init__(self, widths=None, scaling=1.0):
        super().__init__(scaling)
        if widths is not None:
            widths = {int(c): GaussianKernelParams(float(w)).width for c, w in widths.items()}
        self.widths = widths

    def column_widths(self, columns):
        """
        The widths of `columns`, or None for a joint median width
        """
        if self.widths is None or columns is None:
            return None
        missing = [c for c in columns if c not in self.widths]
        if missing:
            raise InputDataError(f"no Gaussian width for columns {missing}")
        return np.array([self.widths[c] for c in columns])

    def kernel(self, block, columns=None):
        block = as_samples(block)
        widths = self.column_widths(columns)
        if widths is None:
            params = median_heuristic_width(block)
            return gaussian_kernel_matrix(self.scaling * block, params)
        return gaussian_kernel_matrix(self.scaling * block / widths, GaussianKernelParams(1.0))

    def with_scaling(self, scaling):
        return GaussianFamily(self.widths, scaling)

    def with_widths(self, widths):
        return GaussianFamily(widths, self.scaling)

    def as_dict(self):
        out = {'family': self.name, 'scaling': self.scaling}
        if self.widths is not None:
            out['widths'] = {str(c): w for c, w in sorted(self.widths.items())}
        return out

    def __repr__(self):
        return f"GaussianFamily(widths={self.widths}, scaling={self.scaling})"


class FidelityFamily(KernelFamily):
    """
    The quantum fidelity kernel; the circuit is sized to the block,
    n_qubits = min(d, max_qubits), and its scaling is replaced by this family's
    """
    name = 'quantum'

    def __init__(self, template=None, scaling=None):
        if template is None:
            template = Configuration.get_default_ansatz()
        if isinstance(template, CircuitSpec):
            template = template.as_dict()
        template = dict(template)
        template.pop('n_qubits', None)
        if scaling is None:
            scaling = template.get('scaling', 1.0)
        super().__init__(scaling)
        template['scaling'] = self.scaling
        # validates the template once
        self.template = spec_for(template, 1).as_dict()
        self.template.pop('n_qubits')

    def spec(self, n_features):
        return spec_for(self.template, n_features)

    def kernel(self, block, columns=None):
        block = as_samples(block)
        spec = self.spec(block.shape[1])
        if block.shape[1] > spec.n_qubits:
            logger.warning("%d features on %d qubits: features %d to %d are not embedded",
                           block.shape[1], spec.n_qubits, spec.n_qubits, block.shape[1] - 1)
        return fidelity_kernel_matrix(block, spec)

    def with_scaling(self, scaling):
        return FidelityFamily(self.template, scaling)

    def as_dict(self):
        return {'family': self.name, **self.template}

    def __repr__(self):
        return f"FidelityFamily({self.template})"


def family_of(kernel, circuit=None, scaling=None):
    if kernel == GaussianFamily.name:
        return GaussianFamily(scaling=1.0 if scaling is None else scaling)
    if kernel == FidelityFamily.name:
        return FidelityFamily(circuit, scaling)
    raise InputDataError(f"kernel must be 'gaussian' or 'quantum', got {kernel!r}")
