"""Magnus representation of Aut(F_n), Fox calculus, Reidemeister-Schreier
rewriting into W_{n,d}, Johnson homomorphisms, and checks on the kernel K_n."""

__version__ = "0.1.0"

from .free_group import (  # noqa: E402
    Automorphism,
    Word,
    apply,
    commutator,
    compose,
    concat_reduce,
    inner,
    inverse,
    magnus_commutator,
    magnus_conjugation,
    sigma_automorphism,
)
from .parsing import parse_automorphism, parse_word  # noqa: E402
from .group_ring import (  # noqa: E402
    FreeRingElem,
    GrMatrix,
    LaurentPoly,
    abelianize_ring,
    abelianize_word,
    matrix_mul,
    parse_poly,
    poly_substitute,
)
from .fox import (  # noqa: E402
    MetabelianElem,
    fox_ab,
    fox_free,
    kernel_member,
    magnus_matrix,
    metabelian_embed,
    metabelian_trivial,
)
from .series import (  # noqa: E402
    LieElement,
    NcSeries,
    dynkin_check,
    expand,
    graded_part,
    lie_decompose,
    lyndon_basis,
)
from .johnson import MagnusGenKey, johnson_depth, tau, tau1_coords, tau1_vector  # noqa: E402
from .schreier import (  # noqa: E402
    SubgroupContext,
    SubgroupWord,
    build_context,
    cyclic_image,
    ia_w_member,
    restrict,
    rewrite,
)
from .detect import (  # noqa: E402
    Report,
    int_rank,
    make_inner,
    make_omega,
    make_sigma,
    pi,
    verify,
)

__all__ = [
    "__version__",
    "Automorphism",
    "Word",
    "apply",
    "commutator",
    "compose",
    "concat_reduce",
    "inner",
    "inverse",
    "magnus_commutator",
    "magnus_conjugation",
    "sigma_automorphism",
    "FreeRingElem",
    "GrMatrix",
    "LaurentPoly",
    "abelianize_ring",
    "abelianize_word",
    "matrix_mul",
    "parse_poly",
    "poly_substitute",
    "MetabelianElem",
    "fox_ab",
    "fox_free",
    "kernel_member",
    "magnus_matrix",
    "metabelian_embed",
    "metabelian_trivial",
    "LieElement",
    "NcSeries",
    "dynkin_check",
    "expand",
    "graded_part",
    "lie_decompose",
    "lyndon_basis",
    "SubgroupContext",
    "SubgroupWord",
    "build_context",
    "cyclic_image",
    "ia_w_member",
    "restrict",
    "rewrite",
    "Report",
    "int_rank",
    "make_inner",
    "make_omega",
    "make_sigma",
    "pi",
    "verify",
    "parse_automorphism",
    "parse_word",
    "MagnusGenKey",
    "johnson_depth",
    "tau",
    "tau1_coords",
    "tau1_vector",
]
