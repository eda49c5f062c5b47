//! `agt`: command-line front end for the automaton group engine.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use agt::certify::{ball_sizes_capped, free_semigroup_check, parse_certificate, run_suite};
use agt::decide::{
    activity_sequence, canonical_key, order, portrait, section_closure, OrderResult,
    DEFAULT_ORDER_BOUND,
};
use agt::subgroups::{
    commutator_witness, orbit_chain, orbits, projection_gens, rist_elements, stabilizer_gens,
    vertex_stabilizer_gens,
};
use agt::{
    corpus, dot, equals, is_trivial, parse_group_file, parse_word, Element, GenSet, GroupDef,
    Vertex,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "agt",
    version,
    about = "Computations in automaton groups acting on rooted trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Group definition file (`.agt`). A bundled group may be named directly,
    /// e.g. `grigorchuk`, when no such file exists.
    #[arg(long, value_name = "FILE")]
    group: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Gens {
    /// Generator word of the subgroup; repeat for several. Defaults to all states.
    #[arg(long = "gen", value_name = "WORD")]
    gens: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Wreath coordinates of a word: first-level sections and root permutation.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Decide whether a word is the identity.
    Trivial {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Decide whether two words represent the same element.
    Equal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        other: String,
    },
    /// Order of an element, searched up to a bound.
    Order {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_BOUND)]
        bound: u64,
    },
    /// Section of a word at a vertex (dot-separated 1-based letters).
    Section {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        vertex: String,
    },
    /// Image of a vertex.
    Act {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        vertex: String,
    },
    /// Root permutations of all sections down to a depth.
    Portrait {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Number of nontrivial sections on each level.
    Activity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Distinct sections of an element as a Mealy automaton.
    Closure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        #[arg(long)]
        dot: bool,
    },
    /// Orbits of a subgroup on levels 0..=depth.
    Orbits {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        gens: Gens,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Emit the Schreier graph of the deepest level as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Schreier generators of a level or vertex stabilizer.
    Stab {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        gens: Gens,
        #[arg(long, conflicts_with = "vertex", required_unless_present = "vertex")]
        level: Option<usize>,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Generators of the projection of a vertex stabilizer to that vertex.
    Project {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        vertex: String,
    },
    /// Short words supported only below a vertex.
    Rist {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Orbit structure of a vertex stabilizer on the subtree below the vertex.
    Chain {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Build h so that the section of [g, h] at k.m equals w.
    CommutatorWitness {
        #[command(flatten)]
        common: Common,
        /// The element g; must fix the first level.
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        w: String,
    },
    /// Sizes of balls in the Cayley graph.
    Ball {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        gens: Gens,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long, default_value_t = agt::ball::DEFAULT_BALL_CAP)]
        cap: usize,
    },
    /// Check that all positive words up to a length are distinct.
    Freesemigroup {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        gens: Gens,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Run a certificate (`.cert`) against the group.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Certificate file; a bundled suite may be named directly.
        #[arg(long, value_name = "FILE")]
        suite: PathBuf,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<agt::Error> for Failure {
    fn from(e: agt::Error) -> Self {
        Failure {
            code: EXIT_INPUT_ERROR,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT_ERROR,
        message,
    }
}

/// Output of one command and whether its check passed.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Outcome {
            text: text.into(),
            json,
            ok: true,
        }
    }

    fn check(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn read_file(
    path: &Path,
    bundled: impl Fn(&str) -> Option<&'static str>,
) -> Result<String, Failure> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) => {
            let name = path.to_string_lossy();
            bundled(&name)
                .map(str::to_string)
                .ok_or_else(|| input_error(format!("cannot read {}: {e}", path.display())))
        }
    }
}

fn load_group(path: &Path) -> Result<Arc<GroupDef>, Failure> {
    let text = read_file(path, |name| match name.trim_end_matches(".agt") {
        "grigorchuk" => Some(corpus::GRIGORCHUK_AGT),
        "basilica" => Some(corpus::BASILICA_AGT),
        "odometer" => Some(corpus::ODOMETER_AGT),
        _ => None,
    })?;
    parse_group_file(&text)
        .map(Arc::new)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn gen_set(group: &Arc<GroupDef>, gens: &Gens) -> Result<GenSet, Failure> {
    if gens.gens.is_empty() {
        return Ok(GenSet::generators(group));
    }
    let words: Vec<&str> = gens.gens.iter().map(String::as_str).collect();
    Ok(GenSet::parse(group, &words)?)
}

fn word(group: &Arc<GroupDef>, text: &str) -> Result<Element, Failure> {
    parse_word(text, group).map_err(|e| input_error(format!("in word `{text}`: {e}")))
}

fn vertex(group: &GroupDef, text: &str) -> Result<Vertex, Failure> {
    Ok(Vertex::parse(text, group.degree())?)
}

fn coords_json(g: &Element) -> Value {
    let c = g.coords();
    json!({
        "slots": c.slots.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "perm": c.perm,
    })
}

fn elements_text(items: &[Element]) -> String {
    items.iter().map(|e| format!("{e}\n")).collect()
}

fn run(command: Command) -> Result<bool, Failure> {
    let (common, outcome) = match command {
        Command::Eval { common, word: w } => {
            let g = word(&load_group(&common.group)?, &w)?;
            let out = Outcome::new(
                g.coords().to_string(),
                json!({"word": g, "coords": coords_json(&g)}),
            );
            (common, out)
        }
        Command::Trivial { common, word: w } => {
            let g = word(&load_group(&common.group)?, &w)?;
            let t = is_trivial(&g);
            (
                common,
                Outcome::new(t.to_string(), json!({"word": g, "trivial": t})),
            )
        }
        Command::Equal {
            common,
            word: w,
            other,
        } => {
            let group = load_group(&common.group)?;
            let (g, h) = (word(&group, &w)?, word(&group, &other)?);
            let e = equals(&g, &h)?;
            (
                common,
                Outcome::new(e.to_string(), json!({"left": g, "right": h, "equal": e})),
            )
        }
        Command::Order {
            common,
            word: w,
            bound,
        } => {
            let g = word(&load_group(&common.group)?, &w)?;
            let r = order(&g, bound);
            let text = match r {
                OrderResult::Exact(n) => n.to_string(),
                OrderResult::ExceedsBound(b) => format!("> {b}"),
            };
            (common, Outcome::new(text, json!({"word": g, "order": r})))
        }
        Command::Section {
            common,
            word: w,
            vertex: v,
        } => {
            let group = load_group(&common.group)?;
            let g = word(&group, &w)?;
            let v = vertex(&group, &v)?;
            let s = g.section(&v)?;
            let text = format!("{s}\ncoords {}", s.coords());
            (
                common,
                Outcome::new(
                    text,
                    json!({"word": g, "vertex": v, "section": s, "coords": coords_json(&s)}),
                ),
            )
        }
        Command::Act {
            common,
            word: w,
            vertex: v,
        } => {
            let group = load_group(&common.group)?;
            let g = word(&group, &w)?;
            let v = vertex(&group, &v)?;
            let image = g.act(&v)?;
            (
                common,
                Outcome::new(
                    image.to_string(),
                    json!({"word": g, "vertex": v, "image": image}),
                ),
            )
        }
        Command::Portrait {
            common,
            word: w,
            depth,
            dot: as_dot,
        } => {
            let g = word(&load_group(&common.group)?, &w)?;
            let p = portrait(&g, depth);
            let text = if as_dot {
                dot::portrait_dot(&p)
            } else {
                portrait_text(&p)
            };
            (
                common,
                Outcome::new(text, serde_json::to_value(&p).unwrap()),
            )
        }
        Command::Activity {
            common,
            word: w,
            levels,
        } => {
            let g = word(&load_group(&common.group)?, &w)?;
            let a = activity_sequence(&g, levels);
            let text = a.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            (
                common,
                Outcome::new(text, json!({"word": g, "activity": a})),
            )
        }
        Command::Closure {
            common,
            word: w,
            dot: as_dot,
        } => {
            let g = word(&load_group(&common.group)?, &w)?;
            let c = section_closure(&g);
            let text = if as_dot {
                dot::closure_dot(&c)
            } else {
                c.states
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let kids: Vec<String> =
                            s.children.iter().map(|k| format!("s{k}")).collect();
                        format!(
                            "s{i} = ({}) {}    # {}\n",
                            kids.join(", "),
                            s.perm,
                            s.element
                        )
                    })
                    .collect()
            };
            let json = json!({
                "word": g,
                "key": canonical_key(&g),
                "states": serde_json::to_value(&c.states).unwrap(),
            });
            (common, Outcome::new(text, json))
        }
        Command::Orbits {
            common,
            gens,
            depth,
            dot: as_dot,
        } => {
            let group = load_group(&common.group)?;
            let s = gen_set(&group, &gens)?;
            let t = orbits(&s, depth);
            let text = if as_dot {
                dot::schreier_dot(&s, depth)
            } else {
                t.levels
                    .iter()
                    .map(|l| {
                        let sizes: Vec<String> =
                            l.orbits.iter().map(|o| o.len().to_string()).collect();
                        format!(
                            "level {}: {} orbit(s), sizes {}\n",
                            l.level,
                            l.orbits.len(),
                            sizes.join(" ")
                        )
                    })
                    .collect()
            };
            (
                common,
                Outcome::new(text, serde_json::to_value(&t).unwrap()),
            )
        }
        Command::Stab {
            common,
            gens,
            level,
            vertex: v,
        } => {
            let group = load_group(&common.group)?;
            let s = gen_set(&group, &gens)?;
            let r = match (level, v) {
                (Some(n), _) => stabilizer_gens(&s, n)?,
                (None, Some(v)) => vertex_stabilizer_gens(&s, &vertex(&group, &v)?)?,
                (None, None) => unreachable!("clap requires --level or --vertex"),
            };
            let text = format!(
                "{} Schreier generator(s), orbit of size {}\n{}",
                r.generators.len(),
                r.transversal.len(),
                elements_text(&r.generators)
            );
            let ok = r.all_fix_target();
            (
                common,
                Outcome::new(text, serde_json::to_value(&r).unwrap()).check(ok),
            )
        }
        Command::Project {
            common,
            gens,
            vertex: v,
        } => {
            let group = load_group(&common.group)?;
            let s = gen_set(&group, &gens)?;
            let p = projection_gens(&s, &vertex(&group, &v)?)?;
            let json = json!({"vertex": v, "generators": p.elements()});
            (common, Outcome::new(elements_text(p.elements()), json))
        }
        Command::Rist {
            common,
            gens,
            vertex: v,
            max_len,
        } => {
            let group = load_group(&common.group)?;
            let s = gen_set(&group, &gens)?;
            let r = rist_elements(&s, &vertex(&group, &v)?, max_len)?;
            let json = json!({"vertex": v, "max_len": max_len, "witnesses": r});
            (common, Outcome::new(elements_text(&r), json))
        }
        Command::Chain {
            common,
            gens,
            vertex: v,
            depth,
            dot: as_dot,
        } => {
            let group = load_group(&common.group)?;
            let s = gen_set(&group, &gens)?;
            let r = orbit_chain(&s, &vertex(&group, &v)?, depth)?;
            let text = if as_dot {
                dot::orbits_dot(&r.table)
            } else {
                let counts: Vec<String> = r.counts.iter().map(usize::to_string).collect();
                let tail = match &r.stabilized {
                    Some(st) => format!(
                        "stabilizes from level {} with {} chain(s){}",
                        st.n0,
                        st.chains.len(),
                        if st.singleton_fibers {
                            ", singleton fibers"
                        } else {
                            ""
                        }
                    ),
                    None => "not stabilized within depth".to_string(),
                };
                format!("orbit counts {}\n{tail}", counts.join(" "))
            };
            (
                common,
                Outcome::new(text, serde_json::to_value(&r).unwrap()),
            )
        }
        Command::CommutatorWitness {
            common,
            word: g,
            k,
            m,
            w,
        } => {
            let group = load_group(&common.group)?;
            let (g, w) = (word(&group, &g)?, word(&group, &w)?);
            let r = commutator_witness(&g, k, m, &w)?;
            let text = format!(
                "h = {}\n[g, h] = {}\nsection at {} = {}\nverified {}\n\n{}",
                r.h, r.commutator, r.vertex, r.section, r.verified, r.group
            );
            let mut json = serde_json::to_value(&r).unwrap();
            json["group"] = Value::String(r.group.to_string());
            (common, Outcome::new(text, json).check(r.verified))
        }
        Command::Ball {
            common,
            gens,
            radius,
            cap,
        } => {
            let group = load_group(&common.group)?;
            let s = gen_set(&group, &gens)?;
            let sizes = ball_sizes_capped(&s, radius, cap)?;
            let text = sizes
                .iter()
                .enumerate()
                .map(|(r, n)| format!("|B({r})| = {n}\n"))
                .collect::<String>();
            (
                common,
                Outcome::new(text, json!({"radius": radius, "sizes": sizes})),
            )
        }
        Command::Freesemigroup {
            common,
            gens,
            max_len,
        } => {
            let group = load_group(&common.group)?;
            let s = gen_set(&group, &gens)?;
            let r = free_semigroup_check(&s, max_len);
            let text = match &r.collision {
                None => format!(
                    "{} positive words, {} distinct, no collision",
                    r.words, r.distinct
                ),
                Some((x, y)) => format!(
                    "{} positive words, {} distinct; first collision: {x} = {y}",
                    r.words, r.distinct
                ),
            };
            let ok = r.collision.is_none();
            (
                common,
                Outcome::new(text, serde_json::to_value(&r).unwrap()).check(ok),
            )
        }
        Command::Certify { common, suite } => {
            let group = load_group(&common.group)?;
            let text = read_file(&suite, |name| {
                corpus::SUITES
                    .iter()
                    .find(|(file, _)| *file == name || file.trim_end_matches(".cert") == name)
                    .map(|(_, text)| *text)
            })?;
            let cert = parse_certificate(&text)
                .map_err(|e| input_error(format!("{}: {e}", suite.display())))?;
            let report = run_suite(&cert, &group)?;
            let mut text = String::new();
            for r in &report.results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{status} {}: {}\n", r.line, r.text));
                if let Some(d) = &r.detail {
                    text.push_str(&format!("     {d}\n"));
                }
            }
            let passed = report.results.iter().filter(|r| r.passed).count();
            text.push_str(&format!(
                "{}: {passed}/{} passed in {:.3} s",
                report.certificate,
                report.results.len(),
                report.elapsed.as_secs_f64()
            ));
            let ok = report.passed;
            (
                common,
                Outcome::new(text, serde_json::to_value(&report).unwrap()).check(ok),
            )
        }
    };
    let ok = outcome.ok;
    if common.json {
        println!("{}", serde_json::to_string_pretty(&outcome.json).unwrap());
    } else {
        println!("{}", outcome.text.trim_end());
    }
    Ok(ok)
}

fn portrait_text(p: &agt::decide::Portrait) -> String {
    use agt::decide::PortraitNode;
    fn walk(n: &PortraitNode, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match n {
            PortraitNode::Internal {
                vertex,
                perm,
                children,
            } => {
                out.push_str(&format!("{pad}{vertex}: {perm}\n"));
                children.iter().for_each(|c| walk(c, indent + 1, out));
            }
            PortraitNode::Leaf { vertex, residual } => {
                out.push_str(&format!("{pad}{vertex}: [{residual}]\n"));
            }
        }
    }
    let mut out = String::new();
    walk(&p.root, 0, &mut out);
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
