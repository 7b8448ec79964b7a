from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hybrid_qubit_sim.core.errors import ConfigError

SHAPES = ("linear", "cosine", "smooth")


def _ramp_area(x):
    # integral of the smootherstep 6x^5 - 15x^4 + 10x^3 from 0 to x
    return x**6 - 3.0 * x**5 + 2.5 * x**4


@dataclass(frozen=True)
class SweepSchedule:
    """eps(t) from eps_initial to eps_final over ``duration`` ns.

    ``smooth`` runs at constant velocity except for ``edge_ns`` long velocity ramps at
    both ends; the ramps follow a smootherstep, so velocity, acceleration and jerk are
    continuous everywhere and vanish at t = 0 and t = duration.
    """

    eps_initial: float
    eps_final: float
    duration: float
    shape: str = "linear"
    edge_ns: float = 0.0

    def __post_init__(self) -> None:
        if not self.duration > 0:
            raise ConfigError(
                f"sweep duration must be positive, got {self.duration}", key="sweep_ns"
            )
        if self.shape not in SHAPES:
            raise ConfigError(f"unknown sweep shape {self.shape!r}", key="sweep_shape")
        if self.shape == "smooth" and not 0.0 < 2.0 * self.edge_ns <= self.duration:
            raise ConfigError(
                f"smooth sweep needs 0 < edge_ns <= duration/2, got {self.edge_ns}",
                key="edge_ns",
            )

    @classmethod
    def with_smooth_edges(
        cls, eps_initial: float, eps_final: float, duration: float, edge_ns: float
    ) -> "SweepSchedule":
        # ramps sit outside the linear window; endpoints overshoot by v edge_ns / 2
        if not duration > 0:
            raise ConfigError(f"sweep duration must be positive, got {duration}", key="sweep_ns")
        if not edge_ns > 0:
            raise ConfigError(f"edge_ns must be positive, got {edge_ns}", key="edge_ns")
        overshoot = 0.5 * (eps_final - eps_initial) / duration * edge_ns
        return cls(
            eps_initial - overshoot,
            eps_final + overshoot,
            duration + 2.0 * edge_ns,
            "smooth",
            edge_ns,
        )

    @property
    def velocity(self) -> float:
        return abs(self.eps_final - self.eps_initial) / self.duration

    @property
    def core_velocity(self) -> float:
        # constant-velocity part of a smooth sweep
        if self.shape == "smooth":
            return abs(self.eps_final - self.eps_initial) / (self.duration - self.edge_ns)
        return self.velocity

    def crosses_zero(self) -> bool:
        return self.eps_initial * self.eps_final < 0

    def epsilon(self, t):
        t = np.clip(np.asarray(t, dtype=float), 0.0, self.duration)
        span = self.eps_final - self.eps_initial
        if self.shape == "smooth":
            tau = self.edge_ns
            rate = span / (self.duration - tau)
            head = self.eps_initial + rate * tau * _ramp_area(np.minimum(t, tau) / tau)
            tail = self.eps_final - rate * tau * _ramp_area(
                np.minimum(self.duration - t, tau) / tau
            )
            core = self.eps_initial + rate * (t - 0.5 * tau)
            return np.where(t < tau, head, np.where(t > self.duration - tau, tail, core))
        x = t / self.duration
        if self.shape == "cosine":
            x = 0.5 * (1.0 - np.cos(np.pi * x))
        return self.eps_initial + span * x

    def reversed(self) -> "SweepSchedule":
        return SweepSchedule(
            self.eps_final, self.eps_initial, self.duration, self.shape, self.edge_ns
        )


@dataclass(frozen=True)
class ChargeRamp:
    """q_ext(t) = q0 + (q1 - q0) sin^2(pi t / 2 tau) on [0, tau]."""

    q_start: float
    q_end: float
    duration: float

    def __post_init__(self) -> None:
        if self.duration < 0:
            raise ConfigError(f"ramp duration must be >= 0, got {self.duration}", key="switch_ns")

    @property
    def sudden(self) -> bool:
        return self.duration == 0.0

    def q_ext(self, t):
        if self.sudden:
            return np.full_like(np.asarray(t, dtype=float), self.q_end)
        t = np.clip(np.asarray(t, dtype=float), 0.0, self.duration)
        weight = np.sin(0.5 * np.pi * t / self.duration) ** 2
        return self.q_start + (self.q_end - self.q_start) * weight
