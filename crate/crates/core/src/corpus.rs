//! Built-in example codes, shared by tests, the CLI and the docs table.

use crate::error::Result;
use crate::extraction::extract_classical;
use crate::format::{parse_generator_matrix, parse_stabilizer};
use crate::lincode::GeneratorMatrix;
use crate::stabilizer::{quantum_distance, to_standard_form, QuantumDistance, StabilizerCode};

pub const EIGHT_THREE: &str = include_str!("../data/eight_three.stab");
pub const EIGHT_THREE_STANDARD: &str = include_str!("../data/eight_three_standard.stab");
pub const EIGHT_THREE_DISPLAYED: &str = include_str!("../data/eight_three_displayed.stab");
pub const EIGHT_THREE_MUTATED: &str = include_str!("../data/eight_three_mutated.stab");
pub const FIVE_QUBIT: &str = include_str!("../data/five_qubit.stab");
pub const STEANE: &str = include_str!("../data/steane.stab");
pub const SHOR: &str = include_str!("../data/shor.stab");
pub const FOUR_TWO_TWO: &str = include_str!("../data/four_two_two.stab");
pub const BIT_FLIP: &str = include_str!("../data/bit_flip.stab");
pub const PHASE_FLIP: &str = include_str!("../data/phase_flip.stab");
pub const SINGLE_Z: &str = include_str!("../data/single_z.stab");
pub const SINGLE_X: &str = include_str!("../data/single_x.stab");
pub const FIVE_TWO: &str = include_str!("../data/five_two.gen");
pub const SEVEN_THREE: &str = include_str!("../data/seven_three.gen");
pub const REPETITION3: &str = include_str!("../data/repetition3.gen");

fn stab(text: &str) -> StabilizerCode {
    parse_stabilizer(text).expect("built-in stabilizer file parses")
}

fn gen(text: &str) -> GeneratorMatrix {
    parse_generator_matrix(text).expect("built-in generator file parses")
}

pub fn eight_three() -> StabilizerCode {
    stab(EIGHT_THREE)
}

pub fn eight_three_standard() -> StabilizerCode {
    stab(EIGHT_THREE_STANDARD)
}

/// The standard form as usually printed; rows 1 and 2 anticommute with row 3.
pub fn eight_three_displayed() -> StabilizerCode {
    stab(EIGHT_THREE_DISPLAYED)
}

/// Not a valid stabilizer code: two generators anticommute.
pub fn eight_three_mutated() -> StabilizerCode {
    stab(EIGHT_THREE_MUTATED)
}

pub fn phase_flip() -> StabilizerCode {
    stab(PHASE_FLIP)
}

pub fn five_two() -> GeneratorMatrix {
    gen(FIVE_TWO)
}

pub fn seven_three() -> GeneratorMatrix {
    gen(SEVEN_THREE)
}

pub fn repetition3() -> GeneratorMatrix {
    gen(REPETITION3)
}

#[derive(Debug, Clone)]
pub struct NamedCode {
    pub name: &'static str,
    pub code: StabilizerCode,
    /// Whether the code comes with published reference values.
    pub normative: bool,
}

/// Every valid built-in stabilizer code.
pub fn stabilizer_codes() -> Vec<NamedCode> {
    [
        ("eight_three", EIGHT_THREE, true),
        ("eight_three_standard", EIGHT_THREE_STANDARD, true),
        ("five_qubit", FIVE_QUBIT, false),
        ("steane", STEANE, false),
        ("shor", SHOR, false),
        ("four_two_two", FOUR_TWO_TWO, false),
        ("bit_flip", BIT_FLIP, false),
        ("phase_flip", PHASE_FLIP, false),
        ("single_z", SINGLE_Z, false),
        ("single_x", SINGLE_X, false),
    ]
    .into_iter()
    .map(|(name, text, normative)| NamedCode {
        name,
        code: stab(text),
        normative,
    })
    .collect()
}

pub fn generator_codes() -> Vec<(&'static str, GeneratorMatrix)> {
    vec![
        ("five_two", five_two()),
        ("seven_three", seven_three()),
        ("repetition3", repetition3()),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRow {
    pub name: &'static str,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub r: usize,
    /// 0 when `k = 0`.
    pub quantum_distance: usize,
    /// `(n - r, k)` and minimum distance of the extracted code, if `k > 0`.
    pub classical: Option<(usize, usize, usize)>,
}

pub fn summary_rows() -> Result<Vec<CorpusRow>> {
    let mut rows = Vec::new();
    for c in stabilizer_codes() {
        let sf = to_standard_form(&c.code)?;
        let dq = if sf.k == 0 {
            0
        } else {
            match quantum_distance(&c.code, c.code.n())? {
                QuantumDistance::Exact(d) => d,
                QuantumDistance::ExceedsCap(cap) => cap + 1,
            }
        };
        let classical = if sf.k == 0 {
            None
        } else {
            let ex = extract_classical(&sf, c.name)?;
            Some((ex.n_classical, ex.k, ex.generator.min_distance()?))
        };
        rows.push(CorpusRow {
            name: c.name,
            n: sf.n(),
            k: sf.k,
            s: sf.s,
            r: sf.r,
            quantum_distance: dq,
            classical,
        });
    }
    Ok(rows)
}

/// Markdown table of [`summary_rows`].
pub fn summary_table() -> Result<String> {
    let mut out = String::from(
        "| code | n | k | s | r | d (quantum) | t (quantum) | classical (n', k) | d (classical) | t (classical) |\n\
         |---|---|---|---|---|---|---|---|---|---|\n",
    );
    for row in summary_rows()? {
        let classical = match row.classical {
            Some((nc, kc, dc)) => format!("({nc}, {kc}) | {dc} | {}", (dc - 1) / 2),
            None => "none | - | -".to_string(),
        };
        let (dq, tq) = if row.k == 0 {
            ("-".to_string(), "-".to_string())
        } else {
            (
                row.quantum_distance.to_string(),
                ((row.quantum_distance - 1) / 2).to_string(),
            )
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {dq} | {tq} | {classical} |\n",
            row.name, row.n, row.k, row.s, row.r,
        ));
    }
    Ok(out)
}
