"""attrscope: diagnostics engine and coordinated-view explorer for
multi-attribute image classifiers."""

from .model import AttributeCatalog, Dataset, ImageRecord, Space, decide

__version__ = "0.1.0"

__all__ = ["AttributeCatalog", "Dataset", "ImageRecord", "Space", "decide", "__version__"]
