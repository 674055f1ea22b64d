//! Machine-readable citations attached to reports, naming the classical
//! results each verdict leans on.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Citation {
    /// Stable tag for JSON output.
    pub tag: &'static str,
    /// One-line statement of the result being invoked.
    pub statement: &'static str,
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.tag, self.statement)
    }
}

/// Hilbert's Nullstellensatz in the radical-membership form used by the
/// validity check.
pub const NULLSTELLENSATZ_RADICAL: Citation = Citation {
    tag: "nullstellensatz-radical",
    statement: "a polynomial vanishing on the common zero locus of an ideal over the \
                algebraic closure lies in the ideal's radical (Hilbert Nullstellensatz, \
                Rabinowitsch form)",
};

/// Quillen-Suslin / unimodular-row triviality: a map whose coordinates span
/// the unit ideal is naively homotopic to a constant map of punctured space.
pub const UNIMODULAR_NULL_HOMOTOPY: Citation = Citation {
    tag: "unimodular-null-homotopy",
    statement: "a polynomial endomorphism of punctured affine space whose coordinates \
                generate the unit ideal extends over the origin and is naively \
                A1-homotopic to a constant map (via Quillen-Suslin solvability of \
                unimodular rows)",
};

/// The local algebra at an isolated zero carries the local degree as an
/// explicit symmetric bilinear form.
pub const EKL_LOCAL_DEGREE: Citation = Citation {
    tag: "ekl-local-degree",
    statement: "the local A1-Brouwer degree of a map with an isolated zero at the origin \
                is the class of the Eisenbud-Khimshiashvili-Levine form on the finite \
                local algebra (Kass-Wickelgren)",
};

/// Rank-two-or-more local degree forms contain a hyperbolic summand.
pub const LOCAL_DEGREE_HYPERBOLIC_SUMMAND: Citation = Citation {
    tag: "local-degree-hyperbolic-summand",
    statement: "an EKL local degree form of rank at least 2 splits off a hyperbolic \
                plane, so anisotropic forms of rank at least 2 are not local degrees \
                (Quick-Strand-Wilson)",
};

/// Morel's degree classification for endomorphisms of punctured space.
pub const MOTIVIC_DEGREE_CLASSIFICATION: Citation = Citation {
    tag: "motivic-degree-classification",
    statement: "naive homotopy classes of endomorphisms of punctured affine n-space \
                (n >= 2) are detected in the Grothendieck-Witt group by Morel's \
                A1-Brouwer degree",
};
