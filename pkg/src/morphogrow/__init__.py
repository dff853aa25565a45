"""One-dimensional quasi-stationary morphoelastic growth with a nutrient field."""

from .config import Scenario, parse_scenario, scenario_from_dict
from .elasticity import ElasticSolution, elastic_response, reconstruct, solve_stress
from .energy import (
    EnergyModel,
    LogQuadraticEnergy,
    QuarticLogEnergy,
    make_log_quadratic,
    make_quartic_log,
    validate_energy,
)
from .errors import ConfigError, GrowthCollapse, MorphoError
from .growth import ExampleLawParams, GrowthContext, envelope, example_law, growth_rhs
from .numerics import Grid, ScalarField, make_uniform_grid
from .nutrient import solve_nutrient_eulerian, solve_nutrient_lagrangian
from .sim import Problem, SimState, Trajectory, rk4_step, run

__version__ = "0.1.0"
