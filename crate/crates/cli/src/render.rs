use serde::Serialize;
use sigmacat::suite::Entry;
use sigmacat::twocat::Verdict;

use crate::Format;

/// Rendered command output and whether it counts as positive.
pub struct Output {
    pub text: String,
    pub positive: bool,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    fixtures: &'a [&'a Entry],
    outcome: bool,
    result: &'a T,
}

pub fn emit<T: Serialize>(
    format: Format,
    command: &str,
    fixtures: &[&Entry],
    outcome: bool,
    result: &T,
    human: impl FnOnce() -> String,
) -> Output {
    let text = match format {
        Format::Human => human(),
        Format::Machine => {
            let env = Envelope {
                command,
                fixtures,
                outcome,
                result,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("output serializes");
            s.push('\n');
            s
        }
    };
    Output {
        text,
        positive: outcome,
    }
}

pub fn verdict(v: &Verdict) -> String {
    let mut out = format!("{}: {}\n", v.property, if v.holds() { "holds" } else { "fails" });
    match v.first_counterexample() {
        Some(c) => {
            out.push_str(&format!("  condition: {}\n", c.condition));
            if !c.instance.is_empty() {
                out.push_str(&format!("  instance: {}\n", c.instance.join(", ")));
            }
            if !c.detail.is_empty() {
                out.push_str(&format!("  detail: {}\n", c.detail));
            }
        }
        None => out.push_str(&format!("  witnesses: {}\n", v.all_witnesses().len())),
    }
    out
}
