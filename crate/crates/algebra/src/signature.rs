use crate::Mat4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignatureKind {
    Euclidean,
    Lorentzian,
}

impl SignatureKind {
    pub fn name(self) -> &'static str {
        match self {
            SignatureKind::Euclidean => "euclidean",
            SignatureKind::Lorentzian => "lorentzian",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "euclidean" | "riemannian" => Some(SignatureKind::Euclidean),
            "lorentzian" | "minkowski" => Some(SignatureKind::Lorentzian),
            _ => None,
        }
    }
}

/// The diagonal bilinear form `h` on the model vector space.
#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    kind: SignatureKind,
    diag: [f64; 4],
}

impl Signature {
    pub fn new(kind: SignatureKind) -> Self {
        let diag = match kind {
            SignatureKind::Euclidean => [1.0, 1.0, 1.0, 1.0],
            SignatureKind::Lorentzian => [1.0, -1.0, -1.0, -1.0],
        };
        Signature { kind, diag }
    }

    pub fn euclidean() -> Self {
        Self::new(SignatureKind::Euclidean)
    }

    pub fn lorentzian() -> Self {
        Self::new(SignatureKind::Lorentzian)
    }

    pub fn kind(&self) -> SignatureKind {
        self.kind
    }

    /// `h_aa`; also equal to `h^aa` since the entries are ±1.
    pub fn diag(&self, a: usize) -> f64 {
        self.diag[a]
    }

    pub fn h(&self) -> Mat4 {
        Mat4::from_diagonal(&self.diag.into())
    }

    pub fn h_inv(&self) -> Mat4 {
        Mat4::from_diagonal(&self.diag.map(|d| 1.0 / d).into())
    }
}
