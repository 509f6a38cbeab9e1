"""
Experiment configuration, Monte Carlo runner, result files and the command line.
"""
