use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Stable identifier of a hypergroup, derived from its descriptor string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HypergroupId(pub u64);

impl HypergroupId {
    /// FNV-1a over the descriptor bytes.
    pub fn from_descriptor(descriptor: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in descriptor.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        HypergroupId(h)
    }
}

/// The shape-specific part of an [`Element`].
///
/// The derived ordering is the canonical element order: lexicographic on
/// tuples, numeric on class ids (which are themselves numbered by minimal
/// group element).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Payload {
    /// Spin index of an SU(2) irrep.
    Nat(u32),
    /// Multi-index (Chebyshev) or highest weight (SU(3)).
    Tuple(SmallVec<[u32; 4]>),
    /// Conjugacy class id.
    Class(u32),
    /// Componentwise element of a product hypergroup.
    Pair(Box<[Element]>),
}

/// A point of a discrete hypergroup.
///
/// Two elements are equal iff they belong to the same hypergroup and carry
/// the same payload.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element {
    pub group: HypergroupId,
    pub payload: Payload,
}

impl Element {
    pub fn new(group: HypergroupId, payload: Payload) -> Self {
        Element { group, payload }
    }

    pub fn as_nat(&self) -> Option<u32> {
        match self.payload {
            Payload::Nat(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[u32]> {
        match &self.payload {
            Payload::Tuple(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_class(&self) -> Option<u32> {
        match self.payload {
            Payload::Class(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<&[Element]> {
        match &self.payload {
            Payload::Pair(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Nat(n) => write!(f, "{n}"),
            Payload::Tuple(t) if t.len() == 1 => write!(f, "{}", t[0]),
            Payload::Tuple(t) => {
                write!(f, "(")?;
                for (i, v) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            Payload::Class(c) => write!(f, "C{c}"),
            Payload::Pair(parts) => {
                write!(f, "[")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{}", p.payload)?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.payload.fmt(f)
    }
}
