from dataclasses import asdict, dataclass
from typing import Optional


@dataclass(frozen=True)
class CITestResult:
    """
    The outcome of one (conditional) independence test

    Properties:
        statistic: T_UI or T_CI
        gamma_shape, gamma_scale: the gamma approximation (k, theta) of the null
        p_value: tail probability of the statistic under the null
        independent: p_value > alpha
        alpha: the significance level used
        critical_value: the (1 - alpha) quantile of the null
        null: 'gamma', 'monte_carlo' or 'oracle'
    """
    statistic: float
    gamma_shape: float
    gamma_scale: float
    p_value: float
    independent: bool
    alpha: float
    critical_value: Optional[float] = None
    null: str = 'gamma'

    @property
    def null_mean(self):
        return self.gamma_shape * self.gamma_scale

    @property
    def null_variance(self):
        return self.gamma_shape * self.gamma_scale ** 2

    def as_dict(self):
        return asdict(self)
