"""Gap statistics of prime-filtered Farey fractions.

The package enumerates the Farey sequence of order Q, filters out the
fractions whose denominator a chosen prime p divides, histograms the
gap tuples of the surviving sequence, and evaluates the limiting
densities of those tuples exactly through rational region geometry and
residue-family enumeration.  Lattice-count identities cross-check the
two sides at finite order.
"""

from ._errors import InvariantViolation
from .farey import (FareyFraction, are_neighbors, enumerate_farey, farey_arrays,
                    farey_size, is_prime, next_pair, predecessor, size_main_term,
                    successor, totients)
from .gaps import (GapHistogram, delta_of_pair, delta_stream, empirical_density,
                   triple_index_counts, tuple_counts)
from .geometry import (EMPTY_POLYGON, HalfPlane, RationalPolygon, base_triangle,
                       contains_point, halfplane_clip, index_cell, make_polygon,
                       perimeter, polygon_area, predicted_empty, pullback,
                       region_tuple, scale_polygon, triangle_map)
from .lattice import (CellRegion, CongruenceClass, MainTerms, PolygonRegion,
                      asymptotic_main_terms, brute_count_congruent,
                      brute_count_coprime, brute_count_p, mobius_sieve,
                      moebius_count_congruent)
from .residues import (FreeSlot, IndexTemplate, MemberFamily, Pinned,
                       ResiduePattern, delta_of, enumerate_families,
                       index_conditions_hold, index_constraint,
                       residue_string_consistent, window_signature,
                       zero_patterns)
from .density import (CompareRow, DensityEstimate, IdentityReport,
                      closed_form_density, compare, default_cutoff, delta_grid,
                      identity_check, theoretical_density)

__version__ = "0.1.0"
