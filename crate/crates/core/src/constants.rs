//! Classical constants, stored as literals rather than computed.

/// Euler–Mascheroni constant γ = 0.577215664901532860606512090082...
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;
pub const EULER_GAMMA_STR: &str = "0.577215664901532860606512090082";

/// First Stieltjes constant γ₁ = -0.0728158454836767248605863758749...
pub const STIELTJES_GAMMA1: f64 = -0.072_815_845_483_676_73;
pub const STIELTJES_GAMMA1_STR: &str = "-0.0728158454836767248605863758749";

/// e^{-γ}.
pub fn exp_neg_gamma() -> f64 {
    (-EULER_GAMMA).exp()
}

/// Golden ratio (1 + √5) / 2.
pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}
