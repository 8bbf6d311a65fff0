use clap::{ArgAction, Args};
use satlattice::lattice::parse_family;
use satlattice::{Error, Family};

#[derive(Args)]
pub struct FamilyArgs {
    /// Ground size; required with --family.
    #[arg(long)]
    pub n: Option<usize>,
    /// Members in shorthand, e.g. "2,3,1235,1245" ({2,3,5} is 235, the empty
    /// set is 0).
    #[arg(long, conflicts_with = "family_json")]
    pub family: Option<String>,
    /// Add the chain 0 < 1 < 12 < ... < [n] to a shorthand family.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub with_chain: bool,
    /// Full family as JSON {"n":..,"sets":[[..],..]}, or @FILE to read it.
    #[arg(long)]
    pub family_json: Option<String>,
}

impl FamilyArgs {
    pub fn family(&self) -> Result<Family, Error> {
        match (&self.family, &self.family_json) {
            (Some(text), None) => {
                let n = self
                    .n
                    .ok_or_else(|| Error::InvalidArgument("--family needs --n".into()))?;
                let f = parse_family(text, n)?;
                if self.with_chain {
                    Family::with_chain(n, f.iter().copied())
                } else {
                    Ok(f)
                }
            }
            (None, Some(json)) => {
                let text = match json.strip_prefix('@') {
                    Some(path) => std::fs::read_to_string(path)?,
                    None => json.clone(),
                };
                let f: Family = serde_json::from_str(&text)?;
                if let Some(n) = self.n {
                    if n != f.n() {
                        return Err(Error::InvalidArgument(format!(
                            "--n {n} but the JSON family has n = {}",
                            f.n()
                        )));
                    }
                }
                Ok(f)
            }
            _ => Err(Error::InvalidArgument(
                "give the family with --family or --family-json".into(),
            )),
        }
    }
}
