use std::fmt;

/// Strong generators of the Bershadsky-Polyakov algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Gen {
    J,
    L,
    Gplus,
    Gminus,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::J, Gen::L, Gen::Gplus, Gen::Gminus];

    pub fn name(self) -> &'static str {
        match self {
            Gen::J => "J",
            Gen::L => "L",
            Gen::Gplus => "G+",
            Gen::Gminus => "G-",
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        match s {
            "J" => Some(Gen::J),
            "L" | "T" => Some(Gen::L),
            "G+" | "Gplus" => Some(Gen::Gplus),
            "G-" | "Gminus" => Some(Gen::Gminus),
            _ => None,
        }
    }

    /// J(0)-charge carried by a mode of this generator.
    pub fn charge(self) -> i64 {
        match self {
            Gen::Gplus => 1,
            Gen::Gminus => -1,
            _ => 0,
        }
    }

    /// Weight of the generator for the shifted conformal vector
    /// `omega + DJ/2` (J, G+ weight 1; L, G- weight 2).
    pub fn shifted_weight(self) -> i64 {
        match self {
            Gen::J | Gen::Gplus => 1,
            Gen::L | Gen::Gminus => 2,
        }
    }

    /// Twice the conformal weight for the unshifted conformal vector.
    pub fn twice_weight(self) -> i64 {
        match self {
            Gen::J => 2,
            Gen::L => 4,
            Gen::Gplus | Gen::Gminus => 3,
        }
    }
}

/// A mode in the unshifted subscript convention:
/// `J(z) = sum J_n z^{-n-1}`, `T(z) = sum L_n z^{-n-2}`,
/// `G^±(z) = sum G^±_n z^{-n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BPMode {
    pub gen: Gen,
    pub index: i64,
}

impl BPMode {
    pub const fn new(gen: Gen, index: i64) -> Self {
        BPMode { gen, index }
    }

    pub const fn j(n: i64) -> Self {
        BPMode::new(Gen::J, n)
    }
    pub const fn l(n: i64) -> Self {
        BPMode::new(Gen::L, n)
    }
    pub const fn gp(n: i64) -> Self {
        BPMode::new(Gen::Gplus, n)
    }
    pub const fn gm(n: i64) -> Self {
        BPMode::new(Gen::Gminus, n)
    }

    /// Change of shifted weight when this mode acts.
    pub fn degree(self) -> i64 {
        match self.gen {
            Gen::J | Gen::L | Gen::Gplus => -self.index,
            Gen::Gminus => 1 - self.index,
        }
    }

    /// Position in the PBW order: L, G-, J, G+, each by increasing index
    /// (i.e. decreasing |index| for creation modes).
    pub(crate) fn pbw_key(self) -> (u8, i64) {
        let block = match self.gen {
            Gen::L => 0,
            Gen::Gminus => 1,
            Gen::J => 2,
            Gen::Gplus => 3,
        };
        (block, self.index)
    }

    /// The shifted-grading label of this mode, `X(n)` with
    /// `G^-(n) = G^-_{n+1}`. `L` is reported as the Virasoro mode of the
    /// unshifted field.
    pub fn shifted_index(self) -> i64 {
        match self.gen {
            Gen::Gminus => self.index - 1,
            _ => self.index,
        }
    }
}

impl Ord for BPMode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.pbw_key().cmp(&other.pbw_key())
    }
}

impl PartialOrd for BPMode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BPMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.gen.name(), self.index)
    }
}

/// A mode written in the shifted grading `X(n)`: `J(n) = J_n`,
/// `G^+(n) = G^+_n`, `G^-(n) = G^-_{n+1}`, `L(n) = omega-bar_{(n+1)}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ShiftedMode {
    pub gen: Gen,
    pub n: i64,
}

impl ShiftedMode {
    pub const fn new(gen: Gen, n: i64) -> Self {
        ShiftedMode { gen, n }
    }

    /// The unshifted mode this label stands for. `L(n)` maps to `L_n`; the
    /// `-J_n/2` correction of the shifted Virasoro field is left to callers.
    pub fn unshifted(self) -> BPMode {
        match self.gen {
            Gen::Gminus => BPMode::gm(self.n + 1),
            g => BPMode::new(g, self.n),
        }
    }
}

impl fmt::Display for ShiftedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.gen.name(), self.n)
    }
}
