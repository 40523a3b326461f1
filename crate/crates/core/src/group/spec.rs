//! The group-spec language.
//!
//! ```text
//! spec    := factor ('x' factor)*
//! factor  := atom ('^' k)?
//! atom    := 'Z' n | 'D' n | 'S' n | 'A' n | 'Q8' | 'Dic' n
//!          | 'perm:' cycles (';' cycles)*
//! cycles  := ('(' point (',' point)* ')')* | '()'
//! ```
//!
//! `D<n>` is the dihedral group of order `2n`, `Dic<n>` the dicyclic group of
//! order `4n`. Permutation points are 1-based. Whitespace is ignored.

use crate::error::{Error, Result};

use super::perm::{perm_group, Permutation};
use super::{Group, DEFAULT_ORDER_CAP};

/// Parses `spec` and builds the group, rejecting orders above 512.
pub fn build_group(spec: &str) -> Result<Group> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_group_with_cap(spec: &str, cap: usize) -> Result<Group> {
    let name: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if name.is_empty() {
        return Err(Error::parse(spec, "empty spec"));
    }
    let mut atoms = Vec::new();
    for factor in name.split('x') {
        let (atom, power) = split_power(&name, factor)?;
        let parsed = parse_atom(&name, atom)?;
        for _ in 0..power {
            atoms.push(parsed.clone());
        }
    }

    let mut expected: Option<usize> = Some(1);
    for atom in &atoms {
        expected = match (expected, atom.order()) {
            (Some(a), Some(b)) => a.checked_mul(b),
            _ => None,
        };
        if let Some(order) = expected {
            if order > cap {
                return Err(Error::TooLarge { order, cap });
            }
        }
    }

    let factors = atoms
        .iter()
        .map(|a| a.build(cap))
        .collect::<Result<Vec<_>>>()?;
    let total: usize = factors.iter().map(Group::order).product();
    if total > cap {
        return Err(Error::TooLarge { order: total, cap });
    }
    match factors.len() {
        1 => {
            let mut g = factors.into_iter().next().unwrap();
            g.name = name;
            Ok(g)
        }
        _ => direct_product(&name, &factors),
    }
}

fn split_power<'a>(spec: &str, factor: &'a str) -> Result<(&'a str, usize)> {
    match factor.rsplit_once('^') {
        None => Ok((factor, 1)),
        Some((atom, k)) => {
            let k = parse_number(spec, k, "exponent")?;
            if k == 0 {
                return Err(Error::parse(spec, "exponent must be positive"));
            }
            Ok((atom, k))
        }
    }
}

fn parse_number(spec: &str, text: &str, what: &str) -> Result<usize> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(
            spec,
            format!("expected {what}, found {text:?}"),
        ));
    }
    text.parse()
        .map_err(|_| Error::parse(spec, format!("{what} {text:?} is too large")))
}

#[derive(Clone, Debug)]
enum Atom {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    Dicyclic(usize),
    Perm {
        text: String,
        degree: usize,
        gens: Vec<Permutation>,
    },
}

fn parse_atom(spec: &str, atom: &str) -> Result<Atom> {
    if let Some(rest) = atom.strip_prefix("perm:") {
        return parse_perm(spec, atom, rest);
    }
    if atom == "Q8" {
        return Ok(Atom::Quaternion);
    }
    let (ctor, digits): (fn(usize) -> Atom, &str) = if let Some(d) = atom.strip_prefix("Dic") {
        (Atom::Dicyclic, d)
    } else if let Some(d) = atom.strip_prefix('Z') {
        (Atom::Cyclic, d)
    } else if let Some(d) = atom.strip_prefix('D') {
        (Atom::Dihedral, d)
    } else if let Some(d) = atom.strip_prefix('S') {
        (Atom::Symmetric, d)
    } else if let Some(d) = atom.strip_prefix('A') {
        (Atom::Alternating, d)
    } else {
        return Err(Error::parse(spec, format!("unknown group {atom:?}")));
    };
    let n = parse_number(spec, digits, "a size")?;
    if n == 0 {
        return Err(Error::parse(
            spec,
            format!("{atom:?} needs a positive size"),
        ));
    }
    Ok(ctor(n))
}

fn parse_perm(spec: &str, atom: &str, body: &str) -> Result<Atom> {
    let mut cycle_lists = Vec::new();
    for generator in body.split(';') {
        cycle_lists.push(parse_cycles(spec, generator)?);
    }
    let degree = cycle_lists
        .iter()
        .flatten()
        .flatten()
        .copied()
        .max()
        .unwrap_or(1);
    let gens = cycle_lists
        .iter()
        .map(|cycles| {
            Permutation::from_cycles(degree, cycles)
                .ok_or_else(|| Error::parse(spec, "repeated or zero point in a cycle"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Atom::Perm {
        text: atom.to_string(),
        degree,
        gens,
    })
}

fn parse_cycles(spec: &str, text: &str) -> Result<Vec<Vec<usize>>> {
    if text.is_empty() {
        return Err(Error::parse(spec, "empty permutation generator"));
    }
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::parse(spec, format!("malformed cycle in {text:?}")))?;
        let (body, tail) = inner;
        if !body.is_empty() {
            let points = body
                .split(',')
                .map(|p| parse_number(spec, p, "a point"))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(points);
        }
        rest = tail;
    }
    Ok(cycles)
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

impl Atom {
    fn order(&self) -> Option<usize> {
        match *self {
            Atom::Cyclic(n) => Some(n),
            Atom::Dihedral(n) => n.checked_mul(2),
            Atom::Symmetric(n) => factorial(n),
            Atom::Alternating(n) => factorial(n).map(|f| (f / 2).max(1)),
            Atom::Quaternion => Some(8),
            Atom::Dicyclic(n) => n.checked_mul(4),
            Atom::Perm { .. } => None,
        }
    }

    fn build(&self, cap: usize) -> Result<Group> {
        match self {
            &Atom::Cyclic(n) => Ok(cyclic(n)),
            &Atom::Dihedral(n) => Ok(dihedral(n)),
            &Atom::Symmetric(n) => {
                let mut gens = Vec::new();
                if n >= 2 {
                    gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
                }
                if n >= 3 {
                    gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
                }
                perm_group(&format!("S{n}"), n, &gens, cap)
            }
            &Atom::Alternating(n) => {
                let gens: Vec<_> = (3..=n)
                    .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]).unwrap())
                    .collect();
                perm_group(&format!("A{n}"), n, &gens, cap)
            }
            Atom::Quaternion => {
                let labels = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"];
                let mut g = dicyclic(2);
                g.name = "Q8".into();
                g.labels = labels.iter().map(|s| s.to_string()).collect();
                Ok(g)
            }
            &Atom::Dicyclic(n) => Ok(dicyclic(n)),
            Atom::Perm { text, degree, gens } => perm_group(text, *degree, gens, cap),
        }
    }
}

fn from_rule(
    name: String,
    n: usize,
    labels: Vec<String>,
    mul: impl Fn(usize, usize) -> usize,
) -> Group {
    let table = (0..n)
        .map(|a| (0..n).map(|b| mul(a, b)).collect())
        .collect();
    Group::from_table(name, table, Some(labels)).expect("constructor yields a valid group")
}

fn cyclic(n: usize) -> Group {
    let labels = (0..n).map(|i| i.to_string()).collect();
    from_rule(format!("Z{n}"), n, labels, |a, b| (a + b) % n)
}

fn power_label(base: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{i}"),
    }
}

/// Rotations `r^i` at indices `0..n`, reflections `s r^i` at `n + i`.
fn dihedral(n: usize) -> Group {
    let labels = (0..2 * n)
        .map(|x| {
            let (f, i) = (x / n, x % n);
            match (f, i) {
                (0, 0) => "e".to_string(),
                (0, _) => power_label("r", i),
                _ => format!("s{}", power_label("r", i)),
            }
        })
        .collect();
    from_rule(format!("D{n}"), 2 * n, labels, |a, b| {
        let (f1, i1) = (a / n, a % n);
        let (f2, i2) = (b / n, b % n);
        if f2 == 0 {
            f1 * n + (i1 + i2) % n
        } else {
            (1 - f1) * n + (i2 + n - i1) % n
        }
    })
}

/// `a` of order `2n`, `x^2 = a^n`, `x a = a^-1 x`; `a^i x^f` at index `2nf + i`.
fn dicyclic(n: usize) -> Group {
    let m = 2 * n;
    let labels = (0..2 * m)
        .map(|x| {
            let (f, i) = (x / m, x % m);
            match (f, i) {
                (0, 0) => "e".to_string(),
                (0, _) => power_label("a", i),
                _ => format!("{}x", power_label("a", i)),
            }
        })
        .collect();
    from_rule(format!("Dic{n}"), 2 * m, labels, |a, b| {
        let (f1, i1) = (a / m, a % m);
        let (f2, i2) = (b / m, b % m);
        let moved = if f1 == 0 { i2 } else { (m - i2) % m };
        let mut i = (i1 + moved) % m;
        let mut f = f1 + f2;
        if f == 2 {
            f = 0;
            i = (i + n) % m;
        }
        f * m + i
    })
}

/// Direct product with lexicographic index tuples, first factor most significant.
fn direct_product(name: &str, factors: &[Group]) -> Result<Group> {
    let orders: Vec<usize> = factors.iter().map(Group::order).collect();
    let n: usize = orders.iter().product();
    let split = |mut x: usize| -> Vec<usize> {
        let mut digits = vec![0; orders.len()];
        for (d, &o) in digits.iter_mut().zip(&orders).rev() {
            *d = x % o;
            x /= o;
        }
        digits
    };
    let tuples: Vec<Vec<usize>> = (0..n).map(split).collect();
    let table = tuples
        .iter()
        .map(|a| {
            tuples
                .iter()
                .map(|b| {
                    factors
                        .iter()
                        .zip(a.iter().zip(b))
                        .fold(0, |acc, (g, (&x, &y))| acc * g.order() + g.mul(x, y))
                })
                .collect()
        })
        .collect();
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = factors.iter().zip(t).map(|(g, &x)| g.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Group::from_table(name, table, Some(labels))
}
