use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("invalid arrow: {0}")]
    InvalidArrow(String),
    #[error("inhomogeneous relation: {0}")]
    InhomogeneousRelation(String),
    #[error("relation paths do not share endpoints: {0}")]
    RelationEndpoints(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("quotient is the zero ring")]
    ZeroRing,
    #[error("module is zero")]
    ZeroModule,
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("algebra is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("algebra is not Koszul: generator in homological degree {degree} has internal degree {internal}")]
    NotKoszul { degree: usize, internal: i32 },
    #[error("resolution truncated at the length bound; a bounded Koszul complex is required")]
    InfiniteResolution,
    #[error("Ext algebra is not quadratically presentable within the bound")]
    NotQuadraticallyPresentable,
    #[error("module carries no generation certificate")]
    MissingCertificate,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid wall datum: {0}")]
    InvalidDatum(String),
    #[error("sign convention violated: {0}")]
    SignConvention(String),
    #[error("not a quasi-isomorphism: {0}")]
    NotQuasiIso(String),
    #[error("not strictifiable at this desk scale: {0}")]
    NotStrictifiable(String),
}

pub type Result<T> = core::result::Result<T, Error>;
