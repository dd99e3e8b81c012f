# HBG - bundled corpus checks
from hbg.corpus.verify import (
    CorpusCheck,
    CorpusReport,
    GoldenRecord,
    ManifestEntry,
    load_goldens,
    load_manifest,
    verify_corpus,
)

__all__ = [
    "CorpusCheck",
    "CorpusReport",
    "GoldenRecord",
    "ManifestEntry",
    "load_goldens",
    "load_manifest",
    "verify_corpus",
]
