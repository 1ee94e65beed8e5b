"""
Running the verification suites on a small corpus.  Each suite compares
the constructions against the definitional lattice oracle.
"""

from modecomp import CorpusLimits, format_reports, generate_corpus, run_suites

corpus = generate_corpus(0, CorpusLimits(primes=(2,), max_dim=3, random_count=3))
reports = run_suites(corpus[:6], ["multUV", "clminprdec", "clstunid", "comm-crosscheck"])
print(format_reports(reports))
