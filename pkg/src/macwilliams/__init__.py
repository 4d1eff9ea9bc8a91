"""MacWilliams-type identities for decomposition enumerators over Galois rings."""

from .ring import RingElement, RingSpec, build_ring
from .weights import HAMMING, HOMOGENEOUS, LEE, WeightKind, parse_weight, subfield
from .partitions import AlphabetPartition, all_decompositions, build_partition, decompose
from .cyclotomic import CycInt, cyc
from .krawtchouk import kraw, kraw_hamming, kraw_oracle, well_defined

__version__ = "0.1.0"
