"""
Config package for the project.

This package contains the environment, settings and logging configuration
shared by the library packages and the command-line harness.
"""
