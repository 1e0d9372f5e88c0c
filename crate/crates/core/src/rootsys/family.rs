//! Named families: `weyl:A2`, `shi:B2:k=1`, `cat:A2:k=1`,
//! `shiplus:A2:k=1:ideal=a1,a1+a2`.

use std::fmt;

use super::{
    build_cone, build_root_system, ideal_closure, root_name, ConeArrangement, ConeKind, RootError, RootSystem, RootType,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Weyl,
    Shi {
        k: u32,
    },
    Catalan {
        k: u32,
    },
    /// Generators of the ideal, closed downward when built.
    ShiPlus {
        k: u32,
        generators: Vec<Vec<i64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub root_type: RootType,
    pub rank: usize,
    pub kind: FamilyKind,
}

impl FamilySpec {
    pub fn root_system(&self) -> Result<RootSystem, RootError> {
        build_root_system(self.root_type, self.rank)
    }

    pub fn build(&self) -> Result<(RootSystem, ConeArrangement), RootError> {
        let rs = self.root_system()?;
        let kind = match &self.kind {
            FamilyKind::Weyl => ConeKind::Weyl,
            FamilyKind::Shi { k } => ConeKind::Shi { k: *k },
            FamilyKind::Catalan { k } => ConeKind::Catalan { k: *k },
            FamilyKind::ShiPlus { k, generators } => ConeKind::ShiPlusIdeal {
                k: *k,
                ideal: ideal_closure(&rs, generators)?,
            },
        };
        let cone = build_cone(&rs, kind)?;
        Ok((rs, cone))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = format!("{:?}{}", self.root_type, self.rank);
        match &self.kind {
            FamilyKind::Weyl => write!(f, "weyl:{label}"),
            FamilyKind::Shi { k } => write!(f, "shi:{label}:k={k}"),
            FamilyKind::Catalan { k } => write!(f, "cat:{label}:k={k}"),
            FamilyKind::ShiPlus { k, generators } => {
                let names: Vec<String> = generators.iter().map(|g| root_name(g)).collect();
                write!(f, "shiplus:{label}:k={k}:ideal={}", names.join(","))
            }
        }
    }
}

fn parse_err(input: &str, reason: impl Into<String>) -> RootError {
    RootError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// `A2`, `G2`, `F4`, ...; the exceptional `E` types parse but are
/// unsupported.
pub fn parse_type_label(s: &str) -> Result<(RootType, usize), RootError> {
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(|| parse_err(s, "empty type label"))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| parse_err(s, "expected a type letter followed by a rank"))?;
    let kind = match letter.to_ascii_uppercase() {
        'A' => RootType::A,
        'B' => RootType::B,
        'C' => RootType::C,
        'D' => RootType::D,
        'G' => RootType::G,
        'F' => RootType::F,
        'E' => return Err(RootError::Unsupported(s.to_string())),
        _ => return Err(parse_err(s, "unknown root system type")),
    };
    Ok((kind, rank))
}

/// Parses `a1+2a2` into simple-root coordinates.
pub fn parse_root(s: &str, rank: usize) -> Result<Vec<i64>, RootError> {
    let mut v = vec![0i64; rank];
    for term in s.split('+') {
        let term = term.trim();
        let (coeff, idx) = term
            .split_once('a')
            .ok_or_else(|| parse_err(s, format!("bad root term {term:?}")))?;
        let c: i64 = if coeff.is_empty() {
            1
        } else {
            coeff
                .parse()
                .map_err(|_| parse_err(s, format!("bad coefficient {coeff:?}")))?
        };
        let i: usize = idx.parse().map_err(|_| parse_err(s, format!("bad index {idx:?}")))?;
        if i == 0 || i > rank {
            return Err(parse_err(s, format!("index {i} out of range 1..={rank}")));
        }
        v[i - 1] += c;
    }
    Ok(v)
}

pub fn parse_family(s: &str) -> Result<FamilySpec, RootError> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    if parts.len() < 2 {
        return Err(parse_err(s, "expected <family>:<type>[:k=<n>]"));
    }
    let (root_type, rank) = parse_type_label(parts[1])?;
    let mut k: Option<u32> = None;
    let mut ideal: Option<Vec<Vec<i64>>> = None;
    for opt in &parts[2..] {
        let (key, value) = opt
            .split_once('=')
            .ok_or_else(|| parse_err(s, format!("bad option {opt:?}")))?;
        match key {
            "k" => {
                k = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(s, format!("bad level {value:?}")))?,
                )
            }
            "ideal" => {
                let roots = value
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_root(t, rank))
                    .collect::<Result<Vec<_>, _>>()?;
                ideal = Some(roots);
            }
            _ => return Err(parse_err(s, format!("unknown option {key:?}"))),
        }
    }
    let level = k.unwrap_or(1);
    let kind = match parts[0] {
        "weyl" => {
            if k.is_some() || ideal.is_some() {
                return Err(parse_err(s, "weyl takes no options"));
            }
            FamilyKind::Weyl
        }
        "shi" | "cat" if ideal.is_some() => return Err(parse_err(s, "only shiplus takes an ideal")),
        "shi" => FamilyKind::Shi { k: level },
        "cat" => FamilyKind::Catalan { k: level },
        "shiplus" => FamilyKind::ShiPlus {
            k: level,
            generators: ideal.unwrap_or_default(),
        },
        other => return Err(parse_err(s, format!("unknown family {other:?}"))),
    };
    Ok(FamilySpec { root_type, rank, kind })
}
