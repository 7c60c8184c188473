//! Prenexation into declared classes and the witness constructions for
//! `EPi`, `ESigma` and `Sigma` targets.

mod cnf;
mod prenex;
mod witness;

use std::fmt;

use serde::{Serialize, Serializer};

pub use cnf::{cnf_over_atoms, cnf_over_atoms_with_limit, DEFAULT_CNF_LIMIT};
pub use prenex::{prenex_classical, prenex_in_class, prenex_in_class_as, Side, WitnessResult};
pub use witness::{
    b_decompose, e_neg_witness_epi, e_witness_esigma, epi_conjunction, esigma_combine,
    u_neg_witness_esigma, u_witness_epi, witness_sigma, BDecomposition, Polarity,
};

/// Semi-classical principle tag attached to a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Principle {
    None,
    Lem,
    SigmaLem(i32),
    SigmaDneUDns(usize),
    PiOrPiDne(usize),
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Principle::None => f.write_str("none"),
            Principle::Lem => f.write_str("LEM"),
            Principle::SigmaLem(k) if k < 0 => f.write_str("none"),
            Principle::SigmaLem(k) => write!(f, "Sigma_{k}-LEM"),
            Principle::SigmaDneUDns(k) => write!(f, "Sigma_{k}-DNE+U_{k}-DNS"),
            Principle::PiOrPiDne(k) => write!(f, "Pi_{k}-or-Pi_{k}-DNE"),
        }
    }
}

impl Serialize for Principle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principle_strings() {
        assert_eq!(Principle::SigmaLem(1).to_string(), "Sigma_1-LEM");
        assert_eq!(Principle::SigmaLem(-1).to_string(), "none");
        assert_eq!(Principle::PiOrPiDne(2).to_string(), "Pi_2-or-Pi_2-DNE");
        assert_eq!(
            serde_json::to_value(Principle::Lem).unwrap(),
            serde_json::json!("LEM")
        );
    }
}
