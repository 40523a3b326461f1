use std::fmt::Write;

use super::StructureDigraph;

const LEGEND: &str = "upward triangle: even class; downward triangle: odd class\\n\
double border: smooth odd class; dotted border: rough odd class\\n\
solid arc: deficiency drops by one; dashed arc: same deficiency\\n\
node label: (p,e,o,s) and a generating set of the subgroup";

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

impl StructureDigraph {
    /// Renders the extended structure diagram as Graphviz DOT.
    ///
    /// Node `c<id>` is class `id`. Output depends only on the digraph, so
    /// repeated calls are byte-identical.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name = escape(self.group.name());
        writeln!(out, "digraph \"{name}\" {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  labelloc=b;").unwrap();
        writeln!(
            out,
            "  label=\"structure digraph of GEN({name})\\n{LEGEND}\";"
        )
        .unwrap();
        for (id, class) in self.classes.iter().enumerate() {
            let shape = if class.parity == 0 {
                "triangle"
            } else {
                "invtriangle"
            };
            let border = match (class.parity, class.etype.is_smooth()) {
                (0, _) => "",
                (_, true) => ", peripheries=2",
                (_, false) => ", style=dotted",
            };
            let label = format!(
                "{}\\n{}",
                class.etype,
                escape(&self.group.subgroup_label(&class.subgroup))
            );
            writeln!(out, "  c{id} [shape={shape}{border}, label=\"{label}\"];").unwrap();
        }
        for (id, class) in self.classes.iter().enumerate() {
            for &o in &class.options {
                let style = if self.classes[o].deficiency == class.deficiency {
                    "dashed"
                } else {
                    "solid"
                };
                writeln!(out, "  c{id} -> c{o} [style={style}];").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}
