use std::fmt;

use super::{ClassId, StructureDigraph};

/// The option-type restrictions every genuine structure digraph satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Options of a class in `D_k` lie in `D_{k-1} ∪ D_k`, and at least one
    /// lies in `D_{k-1}`.
    DeficiencyStep,
    /// Even classes have only even options.
    EvenOptionsOnly,
    /// In a group of even order every non-terminal class has an even option.
    EvenOptionExists,
    /// An odd class with a smooth odd option of the same deficiency is smooth.
    SmoothPropagates,
    /// In a group of even order, an odd class with a rough odd option one
    /// deficiency lower is rough.
    RoughPropagates,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::DeficiencyStep => "R0",
            Rule::EvenOptionsOnly => "R1",
            Rule::EvenOptionExists => "R2",
            Rule::SmoothPropagates => "R3",
            Rule::RoughPropagates => "R4",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub class: ClassId,
    /// The offending arc, when the violation is witnessed by one.
    pub arc: Option<(ClassId, ClassId)>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at class {}", self.rule, self.class)?;
        if let Some((a, b)) = self.arc {
            write!(f, " (arc {a} -> {b})")?;
        }
        write!(f, ": {}", self.detail)
    }
}

impl StructureDigraph {
    /// Checks R0–R4 on every class and arc, returning all violations.
    pub fn verify_option_restrictions(&self) -> Vec<Violation> {
        let even_group = self.group.parity() == 0;
        let mut violations = Vec::new();
        let mut push = |rule, class, arc, detail: String| {
            violations.push(Violation {
                rule,
                class,
                arc,
                detail,
            })
        };

        for (id, class) in self.classes.iter().enumerate() {
            let k = class.deficiency;
            let options = || class.options.iter().map(|&o| (o, &self.classes[o]));

            if k >= 1 {
                for (o, option) in options() {
                    if option.deficiency + 1 != k && option.deficiency != k {
                        push(
                            Rule::DeficiencyStep,
                            id,
                            Some((id, o)),
                            format!("deficiency {k} -> {}", option.deficiency),
                        );
                    }
                }
                if !options().any(|(_, x)| x.deficiency + 1 == k) {
                    push(
                        Rule::DeficiencyStep,
                        id,
                        None,
                        format!("no option of deficiency {}", k - 1),
                    );
                }
            }

            if class.parity == 0 {
                for (o, option) in options() {
                    if option.parity == 1 {
                        push(
                            Rule::EvenOptionsOnly,
                            id,
                            Some((id, o)),
                            "even class has an odd option".into(),
                        );
                    }
                }
            }

            if even_group && !class.options.is_empty() && !options().any(|(_, x)| x.parity == 0) {
                push(Rule::EvenOptionExists, id, None, "no even option".into());
            }

            if class.parity == 1 {
                for (o, option) in options() {
                    if option.parity != 1 {
                        continue;
                    }
                    if option.deficiency == k
                        && option.etype.is_smooth()
                        && !class.etype.is_smooth()
                    {
                        push(
                            Rule::SmoothPropagates,
                            id,
                            Some((id, o)),
                            "smooth same-deficiency odd option but class is rough".into(),
                        );
                    }
                    if even_group
                        && option.deficiency + 1 == k
                        && !option.etype.is_smooth()
                        && class.etype.is_smooth()
                    {
                        push(
                            Rule::RoughPropagates,
                            id,
                            Some((id, o)),
                            "rough lower odd option but class is smooth".into(),
                        );
                    }
                }
            }
        }
        violations
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::ElementSet;

    fn digraph(spec: &str) -> StructureDigraph {
        StructureDigraph::from_spec(spec, None).unwrap()
    }

    #[test]
    fn genuine_digraphs_are_clean() {
        for spec in [
            "Z1", "Z2", "Z6", "S3", "Z2^3", "D4", "Q8", "A4", "Z3^3", "Dic3",
        ] {
            assert_eq!(digraph(spec).verify_option_restrictions(), vec![], "{spec}");
        }
    }

    #[test]
    fn planted_even_to_odd_arc() {
        let mut d = digraph("Z6");
        let three = d.find(&ElementSet::from_iter([0, 3])).unwrap();
        let two = d.find(&ElementSet::from_iter([0, 2, 4])).unwrap();
        d.inject_arc(three, two);
        let violations = d.verify_option_restrictions();
        assert_eq!(violations.len(), 1, "{violations:?}");
        assert_eq!(violations[0].rule, Rule::EvenOptionsOnly);
        assert_eq!(violations[0].arc, Some((three, two)));
    }

    #[test]
    fn planted_deficiency_jump() {
        let mut d = digraph("Z2^2");
        let root = d.root();
        // Z2^2: the root has deficiency 2, so an arc straight to X_G skips a level.
        assert_eq!(d.class(root).deficiency, 2);
        d.inject_arc(root, d.terminal());
        let rules: Vec<Rule> = d
            .verify_option_restrictions()
            .iter()
            .map(|v| v.rule)
            .collect();
        assert_eq!(rules, vec![Rule::DeficiencyStep]);
    }
}
