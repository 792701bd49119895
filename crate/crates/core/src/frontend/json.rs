use serde::Serialize;

use crate::admissibility::{ComponentVerdict, Verdict};
use crate::gkdim::{GKDim, GKValue};

#[derive(Serialize)]
struct JsonGK {
    variant: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<u64>,
    conditional: bool,
}

impl From<&GKDim> for JsonGK {
    fn from(g: &GKDim) -> Self {
        let (variant, value) = match g.value {
            GKValue::Finite(n) => ("Finite", Some(n)),
            GKValue::AtLeast(n) => ("AtLeast", Some(n)),
            GKValue::Infinite => ("Infinite", None),
        };
        JsonGK {
            variant,
            value,
            conditional: g.conjecture_dependent,
        }
    }
}

#[derive(Serialize)]
struct JsonViolation<'a> {
    clause: String,
    witness: &'a [String],
    reason: &'a str,
}

#[derive(Serialize)]
struct JsonComponent<'a> {
    id: &'a str,
    kind: String,
    admissible: bool,
    violations: Vec<JsonViolation<'a>>,
    gkdim: JsonGK,
    vertices: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    space: &'a str,
    components: Vec<JsonComponent<'a>>,
    total: JsonGK,
}

fn component(c: &ComponentVerdict) -> JsonComponent<'_> {
    JsonComponent {
        id: &c.id,
        kind: c.kind.to_string(),
        admissible: c.admissible,
        violations: c
            .violations
            .iter()
            .map(|v| JsonViolation {
                clause: v.clause.to_string(),
                witness: &v.witness,
                reason: &v.reason,
            })
            .collect(),
        gkdim: (&c.gkdim).into(),
        vertices: &c.vertices,
        note: c.note.as_deref(),
    }
}

fn build(v: &Verdict) -> JsonReport<'_> {
    JsonReport {
        space: &v.space,
        components: v.components.iter().map(component).collect(),
        total: (&v.total).into(),
    }
}

/// The classification report of one space, pretty-printed. Fields and
/// components keep a fixed order, so identical inputs give identical bytes.
pub fn report(v: &Verdict) -> String {
    serde_json::to_string_pretty(&build(v)).expect("report serializes")
}

/// Reports of several spaces: a single object for one space, an array
/// otherwise.
pub fn reports(vs: &[Verdict]) -> String {
    match vs {
        [one] => report(one),
        _ => {
            let all: Vec<JsonReport<'_>> = vs.iter().map(build).collect();
            serde_json::to_string_pretty(&all).expect("report serializes")
        }
    }
}
