use serde::Serialize;

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Follows from a structural criterion whose premises were checked.
    Proven,
    /// Every case was enumerated.
    Exhaustive,
    /// A seeded random sample was checked; absence of a counterexample only.
    Sampled,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Proven => "proven",
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        }
    }
}
