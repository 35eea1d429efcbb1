from pathlib import Path

ASSETS_DIR = Path(__file__).resolve().parent.parent / "assets"

# Estimators
DEFAULT_ENUMERATION_CAP = 10**7
DEFAULT_MC_TRIALS = 100_000
DEFAULT_MC_CHUNK = 50_000

# Testbed
DEFAULT_MDP_FILE = ASSETS_DIR / "gridworld_windy.mdp"
CALM_MDP_FILE = ASSETS_DIR / "gridworld_calm.mdp"
DEFAULT_GAMMA = 0.95
DEFAULT_HORIZON = 50
DEFAULT_GRID_SIZE = 8
DEFAULT_GOAL_REWARD = 10.0
DEFAULT_STEP_COST = 1.0
DEFAULT_WIND_PROB = 0.2
DEFAULT_WINDY_CELLS = ((2, 4), (3, 4), (4, 4), (5, 4))  # (row, col)
DEFAULT_EPSILONS = (0.6, 0.3, 0.1)  # low, medium, high
LEVELS = ("low", "medium", "high")
TRAJECTORY_SCHEME = (99, 999, 9999)
DEFAULT_SPLIT_RATIO = 0.8
DEFAULT_FQE_ITERATIONS = 500
DEFAULT_VI_TOL = 1e-10

ALGORITHM_GRIDS: dict[str, dict[str, tuple]] = {
    "bc": {
        "laplace_smoothing": (0.0, 0.1, 1.0, 10.0),
    },
    "cq": {
        "alpha": (0.0, 1.0, 10.0, 100.0),
        "learning_rate": (0.1, 0.3, 0.5),
        "sweeps": (5, 20, 50),
    },
}

# Reports
DEFAULT_TABLE_BUDGETS = (1, 2, 3, 4, 8, 15, 30)
DEFAULT_SEED = 0
X_AXIS_LABEL = "Number of policies deployed online"
Y_AXIS_LABEL = "Normalized performance"

# NeoRL import
DEFAULT_NEORL_TIMEOUT = 60
