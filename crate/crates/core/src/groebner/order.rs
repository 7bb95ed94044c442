use std::cmp::Ordering;

use crate::staircase::Exponent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// A monomial order on `Z≥0^n`.
///
/// `priority[0]` is the most significant variable: for lex it is compared
/// first, for grevlex ties are broken by the *last* entry of `priority`
/// (smaller exponent there means larger monomial).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    /// Lex with `x1 > x2 > … > xn`.
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    /// Grevlex with `x1 > x2 > … > xn`.
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            priority: (0..nvars).collect(),
        }
    }

    /// `priority` must be a permutation of `0..n`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                return None;
            }
        }
        Some(MonomialOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        let (a, b) = (a.coords(), b.coords());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
                let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for &v in self.priority.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}
