"""Per-pipe flow rates and mean velocities from nodal circuit analysis.

Each pipe acts as a hydraulic resistor (laminar Hagen-Poiseuille law);
the inlet drives a fixed flow rate Q and the outlet is held at zero
reference pressure. Solving the resulting linear conservation system
gives node pressures, from which pipe flows and velocities follow.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import SolverError
from .network import Network, NodeKind, Pipe

RESIDUAL_RTOL = 1e-10


def pipe_resistance(pipe: Pipe, viscosity: float) -> float:
    """Hagen-Poiseuille resistance 8*mu*l/(pi*r^4) in Pa*s/m^3."""
    if viscosity <= 0:
        raise ValueError(f"viscosity must be > 0, got {viscosity}")
    return 8.0 * viscosity * pipe.length / (math.pi * pipe.radius**4)


@dataclass(frozen=True)
class FlowSolution:
    """Result of the hydraulic solve for one network."""

    inlet_flow: float                  # m^3/s
    viscosity: float                   # kg/(m s)
    flow_rates: dict[int, float]       # pipe id -> Q_i, m^3/s
    velocities: dict[int, float]       # pipe id -> mean velocity, m/s
    pressures: dict[int, float]        # node id -> potential, Pa (outlet = 0)

    def flow(self, pipe_id: int) -> float:
        return self.flow_rates[pipe_id]

    def velocity(self, pipe_id: int) -> float:
        return self.velocities[pipe_id]


def solve_flows(net: Network, inlet_flow: float, viscosity: float) -> FlowSolution:
    """Solve the hydraulic circuit for all pipe flows and velocities.

    The outlet node is grounded; a flow source `inlet_flow` feeds the
    inlet node. Raises `SolverError` if the system is singular, the
    conservation residual exceeds tolerance, or any pipe would carry
    flow against its declared direction.
    """
    if inlet_flow <= 0:
        raise ValueError(f"inlet flow rate must be > 0, got {inlet_flow}")

    conductance = {p.id: 1.0 / pipe_resistance(p, viscosity) for p in net.pipes}
    unknown_nodes = [n.id for n in net.nodes if n.kind is not NodeKind.OUTLET]
    index = {v: i for i, v in enumerate(unknown_nodes)}
    m = len(unknown_nodes)

    a = np.zeros((m, m))
    rhs = np.zeros(m)
    rhs[index[net.inlet.id]] = inlet_flow
    for p in net.pipes:
        g = conductance[p.id]
        for v, w in ((p.start, p.end), (p.end, p.start)):
            if v in index:
                a[index[v], index[v]] += g
                if w in index:
                    a[index[v], index[w]] -= g

    try:
        potentials = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"hydraulic system is singular: {exc}") from exc

    residual = np.linalg.norm(a @ potentials - rhs)
    if residual > RESIDUAL_RTOL * max(inlet_flow, 1.0):
        raise SolverError(
            f"hydraulic solve residual {residual:.3e} exceeds tolerance"
        )

    pressures = {v: float(potentials[index[v]]) for v in unknown_nodes}
    pressures[net.outlet.id] = 0.0

    flow_rates = {}
    velocities = {}
    for p in net.pipes:
        q = conductance[p.id] * (pressures[p.start] - pressures[p.end])
        if q <= 0:
            raise SolverError(
                f"pipe {p.id} carries non-positive flow {q:.3e} m^3/s; "
                "its declared direction contradicts the hydraulics"
            )
        flow_rates[p.id] = q
        velocities[p.id] = q / p.area

    return FlowSolution(inlet_flow, viscosity, flow_rates, velocities, pressures)
