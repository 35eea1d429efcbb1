# Agents: tabular offline RL learners and OPS scorers
