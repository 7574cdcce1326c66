//! Transcribed element tables of the evolved qubit⊗qutrit density matrices,
//! used as golden references for the generic dephasing engine.
//!
//! Indices are 1-based as printed, over `|00⟩,|01⟩,|02⟩,|10⟩,|11⟩,|12⟩`.
//! Pure-state tables list each element once with its real damping term; the
//! `e^{±iφ}` phase sits on row 1 (`+`) and column 1 (`-`), and every entry
//! carries the prefactor 1/6.
//!
//! Three printed entries are not self-consistent and are transcribed in
//! corrected form (marked below): the `ρ16` prefactor and the `ρ15` phase of
//! the squeezed-bath table, and the common-noise line that repeats the
//! independent-noise `D₂D₁` entries.

use serde::Serialize;

use crate::dynamics::EnvironmentState;
use crate::error::{Error, Result};
use crate::hilbert::{ComplexMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ElementTable {
    /// Pure state, independent squeezed-vacuum baths.
    A1,
    /// Pure state, independent telegraph noise.
    A2,
    /// Pure state, common telegraph noise.
    A3,
    /// Pure state, telegraph noise on the qubit and squeezed bath on the qutrit.
    A4,
    /// Mixed state, independent squeezed-vacuum baths.
    B1,
    /// Mixed state, independent telegraph noise.
    B2,
    /// Mixed state, common telegraph noise.
    B3,
    /// Mixed state, composite environment.
    B4,
}

#[derive(Clone, Copy, Debug)]
enum Term {
    One,
    /// `e^{-kγ}`
    Exp(u32),
    /// `D_n`
    D(u32),
    /// `D_n D_m`
    DD(u32, u32),
    /// `D_n e^{-kγ}`
    DExp(u32, u32),
}

impl Term {
    fn eval(self, env: &EnvironmentState) -> f64 {
        let e = |k: u32| (-f64::from(k) * env.gamma).exp();
        match self {
            Term::One => 1.0,
            Term::Exp(k) => e(k),
            Term::D(n) => env.d(n),
            Term::DD(n, m) => env.d(n) * env.d(m),
            Term::DExp(n, k) => env.d(n) * e(k),
        }
    }
}

type Listing = (&'static [(usize, usize)], Term);

const A1: &[Listing] = &[
    (&[(1, 2), (1, 4), (2, 1), (4, 1)], Term::Exp(1)),
    (&[(1, 3), (3, 1)], Term::Exp(4)),
    // printed without e^{iφ}; the quoted HSS needs the phase here
    (&[(1, 5), (5, 1)], Term::Exp(2)),
    // printed without the 1/6 prefactor
    (&[(1, 6), (6, 1)], Term::Exp(5)),
    (
        &[
            (2, 3),
            (2, 5),
            (3, 2),
            (3, 6),
            (4, 5),
            (5, 2),
            (5, 4),
            (5, 6),
            (6, 3),
            (6, 5),
        ],
        Term::Exp(1),
    ),
    (&[(4, 6), (6, 4)], Term::Exp(4)),
    (&[(2, 4), (2, 6), (3, 5), (4, 2), (5, 3), (6, 2)], Term::Exp(2)),
    (&[(3, 4), (4, 3)], Term::Exp(5)),
];

const A2: &[Listing] = &[
    (&[(1, 2), (2, 1)], Term::D(1)),
    (&[(2, 3), (3, 2), (4, 5), (5, 4), (5, 6), (6, 5)], Term::D(1)),
    (&[(1, 3), (1, 4), (3, 1), (4, 1)], Term::D(2)),
    (&[(2, 5), (3, 6), (4, 6), (5, 2), (6, 3), (6, 4)], Term::D(2)),
    (&[(1, 5), (5, 1)], Term::DD(2, 1)),
    (&[(2, 4), (2, 6), (3, 5), (4, 2), (5, 3), (6, 2)], Term::DD(2, 1)),
    (&[(1, 6), (6, 1)], Term::DD(2, 2)),
    (&[(3, 4), (4, 3)], Term::DD(2, 2)),
];

const A3: &[Listing] = &[
    (&[(1, 2), (2, 1)], Term::D(1)),
    (
        &[
            (2, 3),
            (3, 2),
            (2, 4),
            (4, 2),
            (3, 5),
            (5, 3),
            (4, 5),
            (5, 4),
            (5, 6),
            (6, 5),
        ],
        Term::D(1),
    ),
    (&[(1, 3), (1, 4), (3, 1), (4, 1)], Term::D(2)),
    (&[(2, 5), (3, 6), (4, 6), (5, 2), (6, 3), (6, 4)], Term::D(2)),
    (&[(1, 5), (5, 1)], Term::D(3)),
    // printed as a repeat of the independent-noise D₂D₁ line; ρ24 and ρ35
    // already appear above, and a single fluctuator gives D₃ on ρ26
    (&[(2, 6), (6, 2)], Term::D(3)),
    (&[(1, 6), (6, 1)], Term::D(4)),
    (&[(3, 4), (4, 3)], Term::One),
];

const A4: &[Listing] = &[
    (&[(1, 2), (2, 1)], Term::Exp(1)),
    (&[(2, 3), (3, 2), (4, 5), (5, 4), (5, 6), (6, 5)], Term::Exp(1)),
    (&[(1, 3), (3, 1)], Term::Exp(4)),
    (&[(1, 4), (4, 1)], Term::D(2)),
    (&[(1, 5), (5, 1)], Term::DExp(2, 1)),
    (&[(1, 6), (6, 1)], Term::DExp(2, 4)),
    (&[(2, 5), (3, 6), (5, 2), (6, 3)], Term::D(2)),
    (&[(2, 4), (2, 6), (3, 5), (4, 2), (5, 3), (6, 2)], Term::DExp(2, 1)),
    (&[(3, 4), (4, 3)], Term::DExp(2, 4)),
    (&[(4, 6), (6, 4)], Term::Exp(4)),
];

impl ElementTable {
    pub const ALL: [ElementTable; 8] = [
        ElementTable::A1,
        ElementTable::A2,
        ElementTable::A3,
        ElementTable::A4,
        ElementTable::B1,
        ElementTable::B2,
        ElementTable::B3,
        ElementTable::B4,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ElementTable::A1 => "A.1",
            ElementTable::A2 => "A.2",
            ElementTable::A3 => "A.3",
            ElementTable::A4 => "A.4",
            ElementTable::B1 => "B.1",
            ElementTable::B2 => "B.2",
            ElementTable::B3 => "B.3",
            ElementTable::B4 => "B.4",
        }
    }

    pub fn is_pure(self) -> bool {
        matches!(
            self,
            ElementTable::A1 | ElementTable::A2 | ElementTable::A3 | ElementTable::A4
        )
    }

    fn listings(self) -> Option<&'static [Listing]> {
        match self {
            ElementTable::A1 => Some(A1),
            ElementTable::A2 => Some(A2),
            ElementTable::A3 => Some(A3),
            ElementTable::A4 => Some(A4),
            _ => None,
        }
    }

    /// Coherence factor `𝓕` of the mixed-state tables.
    fn mixed_factor(self, env: &EnvironmentState) -> f64 {
        match self {
            ElementTable::B1 => (-5.0 * env.gamma).exp(),
            ElementTable::B2 => env.d(2) * env.d(2),
            ElementTable::B3 => env.d(4),
            _ => env.d(2) * (-4.0 * env.gamma).exp(),
        }
    }
}

/// Evolved pure state of a table (A.*) at phase `phi`.
pub fn pure_table(table: ElementTable, phi: f64, env: &EnvironmentState) -> Result<ComplexMatrix> {
    let listings = table
        .listings()
        .ok_or_else(|| Error::InvalidParams(format!("{} is a mixed-state table", table.label())))?;
    let mut values = [[None::<f64>; 6]; 6];
    for k in 0..6 {
        values[k][k] = Some(1.0);
    }
    for &(entries, term) in listings {
        for &(i, j) in entries {
            if values[i - 1][j - 1].replace(term.eval(env)).is_some() {
                return Err(Error::NumericalFailure(format!(
                    "{}: element ({i},{j}) listed twice",
                    table.label()
                )));
            }
        }
    }
    ComplexMatrix::from_fn(6, |i, j| {
        let v = values[i][j].unwrap_or(f64::NAN) / 6.0;
        match (i, j) {
            (0, 0) => C64::new(v, 0.0),
            (0, _) => C64::from_polar(v, phi),
            (_, 0) => C64::from_polar(v, -phi),
            _ => C64::new(v, 0.0),
        }
    })
}

/// Evolved mixed state of a table (B.*) at mixing parameter `p`.
pub fn mixed_table(table: ElementTable, p: f64, env: &EnvironmentState) -> Result<ComplexMatrix> {
    if table.is_pure() {
        return Err(Error::InvalidParams(format!("{} is a pure-state table", table.label())));
    }
    let f = table.mixed_factor(env);
    let a = p / 2.0;
    let b = (1.0 - 2.0 * p) / 2.0;
    let bf = if table == ElementTable::B3 { b } else { b * f };
    ComplexMatrix::from_fn(6, |i, j| {
        let v = match (i + 1, j + 1) {
            (1, 1) | (2, 2) | (5, 5) | (6, 6) => a,
            (3, 3) | (4, 4) => b,
            (1, 6) | (6, 1) => a * f,
            (3, 4) | (4, 3) => bf,
            _ => 0.0,
        };
        C64::new(v, 0.0)
    })
}
