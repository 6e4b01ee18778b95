use thiserror::Error;

/// Every failure mode of the library.
///
/// Variants map one-to-one onto the error conditions of the individual
/// operations; callers at the process boundary translate them into exit
/// codes (see [`Error::exit_class`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("all coordinates are zero")]
    AllZero,
    #[error("discriminant of the quadratic form is not a rational square")]
    NonSquareDiscriminant,
    #[error("form is identically zero")]
    ZeroForm,
    #[error("root has multiplicity below three")]
    NotTripleRoot,
    #[error("restricted quartic vanishes identically")]
    IdenticallyZero,
    #[error("surface coefficient is zero")]
    ZeroCoefficient,
    #[error("product of the coefficients is not a rational square")]
    ProductNotSquare,
    #[error("point does not lie on the surface")]
    NotOnSurface,
    #[error("point has a zero coordinate")]
    ZeroCoordinate,
    #[error("point does not lie on the quadric")]
    NotOnQuadric,
    #[error("tangent section at the seed is a double line")]
    DegenerateTangent,
    #[error("every ruling representation vanishes at the point")]
    AllRepresentationsVanish,
    #[error("point lies in the set of 24 points with two zero coordinates")]
    OmegaPoint,
    #[error("node tangent is contained in the fibre")]
    TangentInCurve,
    #[error("all conjugated variants of the forms vanish")]
    AllVariantsVanish,
    #[error("interpolation failed: {0}")]
    InterpolationFailure(&'static str),
    #[error("fibre is singular")]
    SingularFibre,
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("point is exceptional for the curve map")]
    ExceptionalPoint,
    #[error("classifier and torsion oracle disagree")]
    Contradiction,
    #[error("certificate refused: order class is not infinite")]
    NotInfinite,
    #[error("seed lies in the set of 24 points with two zero coordinates")]
    SeedInOmega,
    #[error("budget admits no nodes")]
    EmptyBudget,
    #[error("surface has no real points")]
    NoRealPoints,
    #[error("internal consistency check failed: {0}")]
    Internal(&'static str),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitClass {
    InvalidSurface,
    NotOnSurface,
    Omega,
    Internal,
    Usage,
}

impl Error {
    pub fn exit_class(&self) -> ExitClass {
        match self {
            Error::ZeroCoefficient | Error::ProductNotSquare | Error::NoRealPoints => {
                ExitClass::InvalidSurface
            }
            Error::NotOnSurface | Error::NotOnQuadric => ExitClass::NotOnSurface,
            Error::OmegaPoint | Error::SeedInOmega => ExitClass::Omega,
            Error::AllZero | Error::ZeroCoordinate | Error::EmptyBudget => ExitClass::Usage,
            _ => ExitClass::Internal,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::AllZero => "AllZero",
            Error::NonSquareDiscriminant => "NonSquareDiscriminant",
            Error::ZeroForm => "ZeroForm",
            Error::NotTripleRoot => "NotTripleRoot",
            Error::IdenticallyZero => "IdenticallyZero",
            Error::ZeroCoefficient => "ZeroCoefficient",
            Error::ProductNotSquare => "ProductNotSquare",
            Error::NotOnSurface => "NotOnSurface",
            Error::ZeroCoordinate => "ZeroCoordinate",
            Error::NotOnQuadric => "NotOnQuadric",
            Error::DegenerateTangent => "DegenerateTangent",
            Error::AllRepresentationsVanish => "AllRepresentationsVanish",
            Error::OmegaPoint => "OmegaPoint",
            Error::TangentInCurve => "TangentInCurve",
            Error::AllVariantsVanish => "AllVariantsVanish",
            Error::InterpolationFailure(_) => "InterpolationFailure",
            Error::SingularFibre => "SingularFibre",
            Error::PointNotOnCurve => "PointNotOnCurve",
            Error::ExceptionalPoint => "ExceptionalPoint",
            Error::Contradiction => "Contradiction",
            Error::NotInfinite => "NotInfinite",
            Error::SeedInOmega => "SeedInOmega",
            Error::EmptyBudget => "EmptyBudget",
            Error::NoRealPoints => "NoRealPoints",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
