//! JSON documents: status tables with provenance, and failure lists.

use g2coh_core::beyond::Failure;
use g2coh_core::facette::Signature;
use g2coh_core::kb::{KbError, Mode, Provenance, RuleId, Status, StatusTable, DEGREES};
use g2coh_core::{WeylElem, Window};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Kb(#[from] KbError),
}

fn schema(msg: impl Into<String>) -> JsonError {
    JsonError::Schema(msg.into())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    p: i64,
    mode: String,
    window: WindowDoc,
    cells: Vec<CellDoc>,
}

/// `bound: null` is the empty window.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WindowDoc {
    bound: Option<i64>,
    chamber: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    facette: Signature,
    degree: u8,
    status: String,
    #[serde(default)]
    round: u32,
    #[serde(default)]
    provenance: Vec<ProvDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProvDoc {
    rule: String,
    #[serde(default)]
    premises: Vec<(Signature, u8)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    citation: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    advisory: bool,
}

/// The whole table, every cell included, in canonical facette order.
/// Facettes are written as signatures in the fixed root order.
pub fn export_table(table: &StatusTable) -> String {
    let sig = |c: u32| {
        let (f, d) = StatusTable::split(c);
        (table.index.sigs[f], d)
    };
    let window = match table.window() {
        Window::Empty => WindowDoc {
            bound: None,
            chamber: None,
        },
        Window::Region { bound, chamber } => WindowDoc {
            bound: Some(bound),
            chamber: chamber.map(|v| v.name().to_string()),
        },
    };
    let cells = table
        .iter_cells()
        .map(|(c, status)| {
            let (facette, degree) = sig(c);
            CellDoc {
                facette,
                degree,
                status: status.short().to_string(),
                round: table.decided_round(c),
                provenance: table
                    .provenance(c)
                    .iter()
                    .map(|p| ProvDoc {
                        rule: p.rule.name().to_string(),
                        premises: p.premises.iter().map(|&q| sig(q)).collect(),
                        citation: p.citation.as_deref().map(str::to_string),
                        advisory: p.advisory,
                    })
                    .collect(),
            }
        })
        .collect();
    let doc = TableDoc {
        p: table.p,
        mode: table.mode.name().to_string(),
        window,
        cells,
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn import_table(text: &str) -> Result<StatusTable, JsonError> {
    let doc: TableDoc = serde_json::from_str(text)?;
    let mode = match doc.mode.as_str() {
        "modular" => Mode::Modular,
        "quantum" => Mode::Quantum,
        m => return Err(schema(format!("unknown mode {m:?}"))),
    };
    if doc.p <= 5 {
        return Err(schema(format!("p = {} is too small", doc.p)));
    }
    let window = match (doc.window.bound, doc.window.chamber) {
        (None, None) => Window::Empty,
        (Some(bound), chamber) => {
            let chamber = match chamber {
                None => None,
                Some(c) => Some(
                    WeylElem::parse(&c).ok_or_else(|| schema(format!("unknown chamber {c:?}")))?,
                ),
            };
            Window::Region { bound, chamber }
        }
        (None, Some(_)) => return Err(schema("chamber without bound")),
    };
    let mut table = StatusTable::new(doc.p, mode, window);
    let cell_of = |t: &StatusTable, sig: &Signature, d: u8| -> Result<u32, JsonError> {
        if d as usize >= DEGREES {
            return Err(schema(format!("degree {d}")));
        }
        let f = t
            .index
            .find_sig(sig)
            .ok_or_else(|| schema(format!("facette {sig:?} is not in the window")))?;
        Ok(StatusTable::cell_id(f, d))
    };
    let mut rows = Vec::with_capacity(doc.cells.len());
    for c in doc.cells {
        let id = cell_of(&table, &c.facette, c.degree)?;
        let status =
            Status::parse(&c.status).ok_or_else(|| schema(format!("status {:?}", c.status)))?;
        let mut prov = Vec::with_capacity(c.provenance.len());
        for p in c.provenance {
            let rule =
                RuleId::parse(&p.rule).ok_or_else(|| schema(format!("rule {:?}", p.rule)))?;
            let premises = p
                .premises
                .iter()
                .map(|(s, d)| cell_of(&table, s, *d))
                .collect::<Result<Vec<_>, _>>()?;
            prov.push(Provenance {
                rule,
                premises: premises.into(),
                citation: p.citation.map(Into::into),
                advisory: p.advisory,
            });
        }
        rows.push((c.round, id, status, prov));
    }
    rows.sort_by_key(|r| (r.0, r.1));
    for (round, id, status, prov) in rows {
        table.restore_cell(id, status, round, prov)?;
    }
    Ok(table)
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDoc {
    pub floor: [i64; 6],
    pub weight: [i64; 2],
}

/// Failure list as an array of floor vectors, each with one weight inside.
pub fn export_failures(failures: &[Failure]) -> String {
    let docs: Vec<FailureDoc> = failures
        .iter()
        .map(|f| FailureDoc {
            floor: f.alcove.n,
            weight: [f.representative.a, f.representative.b],
        })
        .collect();
    serde_json::to_string_pretty(&docs).expect("plain data serializes")
}
