from .experiments import EXPERIMENTS, SweepConfig, SweepReport, run
from .fitting import fit_slope
from .fixtures import FixtureStore, check_fixture, freeze_fixture

__all__ = ["EXPERIMENTS", "SweepConfig", "SweepReport", "run", "fit_slope",
           "FixtureStore", "check_fixture", "freeze_fixture"]
