"""Evaluation metrics, run configuration, pipeline glue, ablation grid and CLI."""
