//! JSON exchange format for programs.
//!
//! ```json
//! {"num_rom_bits": 2, "num_writable": 1, "kind": "quantum",
//!  "instructions": [{"control": 2, "gate": {"axis": "Z", "num": 1, "log2den": 0}},
//!                   {"control": null, "gate": {"perm": [1, 0]}}]}
//! ```
//!
//! Gates are one of `{"perm": [...]}`, `{"axis": "X"|"Z", "num": p,
//! "log2den": k}` or `{"matrix": [[re, im], x4]}` (row-major).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ir::{Axis, DyadicExponent, Gate, Instruction, MachineKind, RomProgram, RomSpace};
use crate::permutation::Permutation;
use crate::sim::quantum::Unitary2;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProgramDoc {
    num_rom_bits: usize,
    num_writable: usize,
    kind: MachineKind,
    instructions: Vec<InstructionDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstructionDoc {
    control: Option<usize>,
    gate: GateDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PermDoc {
    perm: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisDoc {
    axis: Axis,
    num: i64,
    log2den: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    matrix: [[f64; 2]; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GateDoc {
    Perm(PermDoc),
    Axis(AxisDoc),
    Matrix(MatrixDoc),
}

impl From<&Gate> for GateDoc {
    fn from(g: &Gate) -> Self {
        match g {
            Gate::ClassicalPerm(p) => GateDoc::Perm(PermDoc {
                perm: p.images().to_vec(),
            }),
            Gate::QuantumAxis { axis, exponent } => GateDoc::Axis(AxisDoc {
                axis: *axis,
                num: exponent.numerator(),
                log2den: exponent.log2_denominator(),
            }),
            Gate::QuantumRaw(u) => GateDoc::Matrix(MatrixDoc {
                matrix: u.entries().map(|c| [c.re, c.im]),
            }),
        }
    }
}

impl GateDoc {
    fn into_gate(self) -> Result<Gate> {
        Ok(match self {
            GateDoc::Perm(d) => Gate::ClassicalPerm(Permutation::from_images(d.perm)?),
            GateDoc::Axis(d) => Gate::axis(d.axis, DyadicExponent::new(d.num, d.log2den)?),
            GateDoc::Matrix(d) => Gate::QuantumRaw(Unitary2::new(d.matrix.map(|[re, im]| Complex64::new(re, im)))?),
        })
    }
}

impl RomProgram {
    pub fn to_json(&self) -> String {
        let doc = ProgramDoc {
            num_rom_bits: self.space().num_rom_bits(),
            num_writable: self.space().num_writable(),
            kind: self.kind(),
            instructions: self
                .instructions()
                .iter()
                .map(|ins| InstructionDoc {
                    control: ins.control,
                    gate: (&ins.gate).into(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("program documents always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        let value: serde_json::Value = serde_json::from_str(&self.to_json()).expect("valid json");
        serde_json::to_string_pretty(&value).expect("program documents always serialize")
    }

    /// Parses and validates a program document.
    pub fn from_json(text: &str) -> Result<RomProgram> {
        let doc: ProgramDoc = serde_json::from_str(text)?;
        let space = RomSpace::new(doc.num_rom_bits, doc.num_writable, doc.kind)?;
        let instructions = doc
            .instructions
            .into_iter()
            .map(|d| {
                Ok(Instruction {
                    gate: d.gate.into_gate()?,
                    control: d.control,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RomProgram::new(space, instructions)
    }
}
