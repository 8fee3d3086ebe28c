//! Regenerates the displayed formulas from the derived objects.

use serde_json::json;

use crate::bigcell::{symbolic_decomposition, x_alpha};
use crate::error::{Error, Result};
use crate::levi::DomainPoint;
use crate::nbar::group_law;
use crate::ring::{RatFn, Symbol};

pub const FORMULA_NAMES: [&str; 4] = ["nbar_closed_form", "m_entries", "x_alpha", "group_law"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaFormat {
    Json,
    Latex,
}

impl std::str::FromStr for FormulaFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(FormulaFormat::Json),
            "latex" => Ok(FormulaFormat::Latex),
            _ => Err(Error::Config(format!("unknown format `{s}` (json, latex)"))),
        }
    }
}

/// `(lhs text, lhs LaTeX, rhs)` triples for a named formula family.
pub fn formulas(name: &str) -> Result<Vec<(String, String, RatFn)>> {
    let sym = |s: Symbol| (s.name().to_string(), s.latex());
    let out = match name {
        "nbar_closed_form" => {
            let d = symbolic_decomposition()?;
            Symbol::NBAR
                .iter()
                .zip(d.nbar.to_array())
                .map(|(&s, f)| (sym(s), f))
                .collect()
        }
        "m_entries" => {
            let d = symbolic_decomposition()?;
            ["a", "b", "c", "d"]
                .iter()
                .zip(d.m.to_array())
                .map(|(n, f)| ((n.to_string(), n.to_string()), f))
                .collect()
        }
        "x_alpha" => {
            let f = x_alpha(&DomainPoint::generic_d0())?;
            vec![(("x_alpha".to_string(), "x_{\\alpha}".to_string()), f)]
        }
        "group_law" => {
            let law = group_law()?.as_ratfns();
            ["10", "11", "21", "31", "32"]
                .iter()
                .zip(law.to_array())
                .map(|(k, f)| ((format!("z{k}"), format!("z_{{{k}}}")), f))
                .collect()
        }
        _ => {
            return Err(Error::UnknownFormula(format!(
                "{name} (known: {})",
                FORMULA_NAMES.join(", ")
            )))
        }
    };
    Ok(out.into_iter().map(|((a, b), f)| (a, b, f)).collect::<Vec<_>>())
}

pub fn emit_formula(name: &str, format: FormulaFormat) -> Result<String> {
    let fs = formulas(name)?;
    Ok(match format {
        FormulaFormat::Json => {
            let entries: Vec<_> = fs
                .iter()
                .map(|(lhs, _, f)| json!({ "lhs": lhs, "text": f.to_string(), "latex": f.latex() }))
                .collect();
            serde_json::to_string_pretty(&json!({ "name": name, "formulas": entries })).expect("serializes") + "\n"
        }
        FormulaFormat::Latex => fs
            .iter()
            .map(|(_, lhs, f)| format!("{lhs} = {}\n", f.latex()))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_alpha_latex() {
        let s = emit_formula("x_alpha", FormulaFormat::Latex).unwrap();
        assert_eq!(
            s,
            "x_{\\alpha} = \\frac{\\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}}\n"
        );
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            emit_formula("nope", FormulaFormat::Json),
            Err(Error::UnknownFormula(_))
        ));
    }

    #[test]
    fn all_names_emit() {
        for n in FORMULA_NAMES {
            for f in [FormulaFormat::Json, FormulaFormat::Latex] {
                assert!(!emit_formula(n, f).unwrap().is_empty());
            }
        }
    }
}
