"""Query-focused opinion summarization for Q&A threads and blogs.

Sentences are ranked by a learned answer ranker, then selected greedily
under a length budget to maximize a mix of relevance, coverage of topics,
authors and polarities, content coverage and dispersion.
"""

__version__ = "0.1.0"
