//! Builtin models, addressed by name.
//!
//! `torus<2n>` and `torus_contact<2n+1>` take their dimension from the name
//! (`torus4`, `torus_contact5`). The `torus_contact` family has closed
//! generators throughout, so `d(eta) = 0 ≠ omega` and loading it fails; it
//! is kept as the standard example of a rejected contact file.

use super::{load_model, FoliatedModel};
use crate::error::{Error, Result};

const HEISENBERG3: &str = "\
generators: e1 e2 e3
d: e3 = e1^e2
foliation: e3
eta: e3
omega: e1^e2
";

const KODAIRA_THURSTON: &str = "\
generators: e1 e2 e3 e4
d: e4 = e1^e2
omega: e1^e3 + e2^e4
";

const KT_CONTACT5: &str = "\
generators: e0 e1 e2 e3 e4
d: e0 = e1^e3 + e2^e4
d: e4 = e1^e2
foliation: e0
eta: e0
omega: e1^e3 + e2^e4
";

const COSYMPLECTIC_T5: &str = "\
generators: e1 e2 e3 e4 e5
foliation: e5
omega: e1^e2 + e3^e4
";

/// Names listed by `zoo_names`; the torus families also accept other
/// dimensions.
const NAMES: &[&str] = &[
    "torus2",
    "torus4",
    "torus6",
    "heisenberg3",
    "kodaira_thurston",
    "kt_contact5",
    "cosymplectic_t5",
    "torus_contact3",
    "torus_contact5",
];

pub fn zoo_names() -> &'static [&'static str] {
    NAMES
}

fn darboux(n: usize) -> (Vec<String>, String) {
    let gens = (1..=2 * n).map(|i| format!("e{i}")).collect();
    let omega = (1..=n)
        .map(|i| format!("e{}^e{}", 2 * i - 1, 2 * i))
        .collect::<Vec<_>>()
        .join(" + ");
    (gens, omega)
}

fn parse_dim(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

/// The model file text of a builtin model.
pub fn zoo_source(name: &str) -> Result<String> {
    let fixed = match name {
        "heisenberg3" => Some(HEISENBERG3),
        "kodaira_thurston" => Some(KODAIRA_THURSTON),
        "kt_contact5" => Some(KT_CONTACT5),
        "cosymplectic_t5" => Some(COSYMPLECTIC_T5),
        _ => None,
    };
    if let Some(src) = fixed {
        return Ok(format!("name: {name}\n{src}"));
    }
    let unknown = || Error::UnknownModel(name.to_string());
    if let Some(dim) = parse_dim(name, "torus_contact") {
        if dim < 3 || dim % 2 == 0 || dim > 31 {
            return Err(unknown());
        }
        let (gens, omega) = darboux((dim - 1) / 2);
        return Ok(format!(
            "name: {name}\ngenerators: e0 {}\nfoliation: e0\neta: e0\nomega: {omega}\n",
            gens.join(" ")
        ));
    }
    if let Some(dim) = parse_dim(name, "torus") {
        if dim < 2 || dim % 2 == 1 || dim > 32 {
            return Err(unknown());
        }
        let (gens, omega) = darboux(dim / 2);
        return Ok(format!("name: {name}\ngenerators: {}\nomega: {omega}\n", gens.join(" ")));
    }
    Err(unknown())
}

pub fn zoo(name: &str) -> Result<FoliatedModel> {
    load_model(&zoo_source(name)?)
}
