"""gradelab: exact fine gradings of sl(n,C), their symmetries, and graded contractions."""

__version__ = "0.1.0"
