"""XML LabelFrag - prefix-label annotation and fragmentation of XML documents."""

__version__ = "1.0.0"
__author__ = "LabelFrag Team"
