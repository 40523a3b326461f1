use serde::{Deserialize, Serialize};

use super::StructureDigraph;

/// Version of the JSON layouts written by this crate.
pub const REPORT_SCHEMA: u32 = 1;

/// Per-group JSON report. Classes appear in digraph order, i.e. sorted by
/// `(deficiency, size, bit pattern)`; `options` are indices into `classes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub schema: u32,
    pub group: String,
    pub order: usize,
    pub parity: u8,
    pub nim: u32,
    pub classes: Vec<ClassReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub subgroup_label: String,
    pub size: usize,
    pub parity: u8,
    pub deficiency: usize,
    #[serde(rename = "type")]
    pub ty: [u32; 3],
    pub smoothness: u8,
    pub options: Vec<usize>,
}

impl StructureDigraph {
    pub fn report(&self) -> GroupReport {
        let classes = self
            .classes
            .iter()
            .map(|c| ClassReport {
                subgroup_label: self.group.subgroup_label(&c.subgroup),
                size: c.size(),
                parity: c.parity,
                deficiency: c.deficiency,
                ty: [c.etype.p as u32, c.etype.e, c.etype.o],
                smoothness: c.etype.s,
                options: c.options.clone(),
            })
            .collect();
        GroupReport {
            schema: REPORT_SCHEMA,
            group: self.group.name().to_string(),
            order: self.group.order(),
            parity: self.group.parity(),
            nim: self.nim_value(),
            classes,
        }
    }

    pub fn report_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.report()).expect("report serializes");
        text.push('\n');
        text
    }
}
