//! Alternation paths.
//!
//! An alternation path alternates by construction, so it is determined by its
//! first sign and its length. A set of paths is stored as two bitmasks, one per
//! starting sign, with bit `l - 1` standing for the path of length `l`, plus a
//! flag for the empty path.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::ast::Formula;

/// Longest alternation path representable in an [`AltSet`].
pub const MAX_PATH_LEN: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A finite alternating sequence of signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltPath {
    first: Option<Sign>,
    len: usize,
}

impl AltPath {
    pub const EMPTY: AltPath = AltPath {
        first: None,
        len: 0,
    };

    /// The path of length `len >= 1` starting with `first`.
    pub fn new(first: Sign, len: usize) -> Self {
        assert!(len >= 1, "nonempty path needs positive length");
        AltPath {
            first: Some(first),
            len,
        }
    }

    /// `None` is the distinguished first symbol of the empty path.
    pub fn first(&self) -> Option<Sign> {
        self.first
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn flip(&self) -> AltPath {
        AltPath {
            first: self.first.map(Sign::flip),
            len: self.len,
        }
    }

    /// Prefixes `sign`, or returns the path unchanged if it already starts with it.
    pub fn prefix(&self, sign: Sign) -> AltPath {
        if self.first == Some(sign) {
            *self
        } else {
            AltPath::new(sign, self.len + 1)
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        let mut out = Vec::with_capacity(self.len);
        let mut s = self.first;
        for _ in 0..self.len {
            let cur = s.expect("nonempty path has a first sign");
            out.push(cur);
            s = Some(cur.flip());
        }
        out
    }
}

impl fmt::Display for AltPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.signs().iter().map(|s| s.symbol()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

impl Serialize for AltPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let signs: Vec<&str> = self.signs().iter().map(|x| x.symbol()).collect();
        signs.serialize(s)
    }
}

/// A set of alternation paths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AltSet {
    empty: bool,
    plus: u128,
    minus: u128,
}

impl AltSet {
    pub fn quantifier_free() -> Self {
        AltSet {
            empty: true,
            plus: 0,
            minus: 0,
        }
    }

    pub fn union(self, other: AltSet) -> AltSet {
        AltSet {
            empty: self.empty || other.empty,
            plus: self.plus | other.plus,
            minus: self.minus | other.minus,
        }
    }

    pub fn flip(self) -> AltSet {
        AltSet {
            empty: self.empty,
            plus: self.minus,
            minus: self.plus,
        }
    }

    /// Paths already starting with `sign` are kept; all others get `sign` prefixed.
    pub fn prefix(self, sign: Sign) -> AltSet {
        let (same, other) = match sign {
            Sign::Plus => (self.plus, self.minus),
            Sign::Minus => (self.minus, self.plus),
        };
        let grown = same | (other << 1) | u128::from(self.empty);
        match sign {
            Sign::Plus => AltSet {
                empty: false,
                plus: grown,
                minus: 0,
            },
            Sign::Minus => AltSet {
                empty: false,
                plus: 0,
                minus: grown,
            },
        }
    }

    pub fn contains(&self, p: &AltPath) -> bool {
        match p.first {
            None => self.empty,
            Some(s) => p.len <= MAX_PATH_LEN && (self.mask(s) >> (p.len - 1)) & 1 == 1,
        }
    }

    fn mask(&self, s: Sign) -> u128 {
        match s {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }

    /// Maximum path length.
    pub fn degree(&self) -> usize {
        let top = self.plus | self.minus;
        (128 - top.leading_zeros()) as usize
    }

    /// Whether some path of length `len` starts with `sign`.
    pub fn has(&self, sign: Sign, len: usize) -> bool {
        (1..=MAX_PATH_LEN).contains(&len) && (self.mask(sign) >> (len - 1)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = AltPath> + '_ {
        let empty = self.empty.then_some(AltPath::EMPTY);
        let longer = (1..=MAX_PATH_LEN).flat_map(move |l| {
            [Sign::Plus, Sign::Minus]
                .into_iter()
                .filter(move |s| self.has(*s, l))
                .map(move |s| AltPath::new(s, l))
        });
        empty.into_iter().chain(longer)
    }

    pub fn len(&self) -> usize {
        usize::from(self.empty) + (self.plus.count_ones() + self.minus.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Serialize for AltSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// The set of alternation paths of `f`. Paths longer than [`MAX_PATH_LEN`]
/// are truncated; the parser rejects formulas that could produce them.
pub fn alt_paths(f: &Formula) -> AltSet {
    match f {
        Formula::Bot | Formula::Placeholder | Formula::Prime { .. } => AltSet::quantifier_free(),
        Formula::And { l, r } | Formula::Or { l, r } => alt_paths(l).union(alt_paths(r)),
        Formula::Implies { l, r } => alt_paths(l).flip().union(alt_paths(r)),
        Formula::Forall { body, .. } => alt_paths(body).prefix(Sign::Minus),
        Formula::Exists { body, .. } => alt_paths(body).prefix(Sign::Plus),
    }
}

pub fn degree(f: &Formula) -> usize {
    alt_paths(f).degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse;

    fn paths(src: &str) -> Vec<String> {
        alt_paths(&parse(src).unwrap())
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn path_examples() {
        assert_eq!(paths("p /\\ q"), ["<>"]);
        assert_eq!(paths("exists x. forall y. p"), ["<+,->"]);
        assert_eq!(paths("(exists x. forall y. p) -> bot"), ["<>", "<-,+>"]);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&parse("p").unwrap()), 0);
        assert_eq!(degree(&parse("exists x. forall y. p").unwrap()), 2);
        assert_eq!(degree(&parse("(forall x. p) -> exists y. q").unwrap()), 1);
    }

    #[test]
    fn quantifier_keeps_matching_paths() {
        // forall over a body whose paths already start with -
        assert_eq!(paths("forall x. forall y. p"), ["<->"]);
        assert_eq!(paths("forall x. (p /\\ exists y. q)"), ["<->", "<-,+>"]);
    }

    #[test]
    fn path_ops() {
        let p = AltPath::new(Sign::Plus, 3);
        assert_eq!(p.signs(), [Sign::Plus, Sign::Minus, Sign::Plus]);
        assert_eq!(p.flip().first(), Some(Sign::Minus));
        assert_eq!(p.prefix(Sign::Plus), p);
        assert_eq!(p.prefix(Sign::Minus).len(), 4);
        assert_eq!(AltPath::EMPTY.first(), None);
        assert_eq!(AltPath::EMPTY.flip(), AltPath::EMPTY);
    }
}
