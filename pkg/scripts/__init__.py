"""
Scripts package for the choicenet project.

This package contains the command-line harness and its run history tools.
"""
