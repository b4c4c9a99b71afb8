"""lexsynth: synthesize pseudo corpora for under-represented languages from
bilingual lexicons, induce new lexicon entries from small parallel corpora,
apply teacher-label corrections, and assemble mixed training sets."""

__version__ = "0.1.0"
