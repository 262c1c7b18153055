"""hdmt: hierarchical desk-scale morphology transfer toolkit."""

__version__ = "0.1.0"
