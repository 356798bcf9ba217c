//! ASCII skyline and Ferrers diagrams, one text row per unit of height.

use super::{Composition, GeneralizedWord, Partition, WordSymbol};

/// Columns of `#` cells, bottom-aligned; column `i` is `c[i]` cells tall.
pub fn skyline(c: &Composition) -> String {
    let h = c.max_part();
    let mut out = String::new();
    for level in (1..=h).rev() {
        let row: String = c.parts().iter().map(|&p| if p >= level { '#' } else { ' ' }).collect();
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// Skyline of a generalized word: infinite symbols are drawn from the truncation with
/// `omega_height` standing in for `w` and three columns for each repeated symbol, marked by dots.
pub fn word_skyline(w: &GeneralizedWord, omega_height: u32) -> String {
    let mut cols: Vec<(u32, bool)> = Vec::new();
    for s in w.symbols() {
        match *s {
            WordSymbol::Fin(n) => cols.push((n, false)),
            WordSymbol::Omega => cols.push((omega_height, true)),
            WordSymbol::RepOmega(n) => cols.extend([(n, true); 3]),
            WordSymbol::OmegaOmega => cols.extend([(omega_height, true); 3]),
        }
    }
    let h = cols.iter().map(|c| c.0).max().unwrap_or(0);
    let mut out = String::new();
    for level in (1..=h).rev() {
        let row: String = cols
            .iter()
            .map(|&(p, inf)| match (p >= level, inf) {
                (true, true) => ':',
                (true, false) => '#',
                _ => ' ',
            })
            .collect();
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// Left-justified rows.
pub fn ferrers(p: &Partition) -> String {
    let mut out = String::new();
    for &r in p.parts() {
        out.push_str(&"#".repeat(r as usize));
        out.push('\n');
    }
    out
}
