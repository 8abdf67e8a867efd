"""Offline converter for the raw pickled citation-network distribution.

The raw layout is eight files per dataset, ``ind.<name>.{x, tx, allx, y,
ty, ally, graph, test.index}``: pickled scipy sparse feature blocks,
one-hot label blocks, an adjacency dict, and the test-node permutation.
``convert`` reassembles them into a plain directory: ``meta.json``,
``edges.tsv``, ``labels.tsv``, ``features.bin``, ``splits.json``, plus a
``conversion.log`` describing any repairs. Output bytes are deterministic,
so re-running the tool writes identical files.
"""

from .converter import ConversionError, PlanetoidRaw, convert, load_raw

__version__ = "0.1.0"

__all__ = ["ConversionError", "PlanetoidRaw", "convert", "load_raw"]
