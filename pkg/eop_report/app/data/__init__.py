# Data files: runs, scores, curves, MDP fixtures
