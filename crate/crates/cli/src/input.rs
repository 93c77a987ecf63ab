use std::fs;

use twotree::format::{parse_construction, parse_edge_list};
use twotree::generators::{book, fan, path_square, random_chain, random_two_tree, Seed};
use twotree::{realize, SimpleGraph, TwoTreeConstruction};

use crate::args::{Family, InputArgs};
use crate::report::{Failure, Inputs};

/// A loaded input graph; `construction` is present when the input was given
/// as a construction (family or construction file).
pub struct Loaded {
    pub graph: SimpleGraph,
    pub construction: Option<TwoTreeConstruction>,
    pub inputs: Inputs,
}

pub fn family_construction(
    family: Family,
    n: usize,
    seed: u64,
) -> twotree::Result<TwoTreeConstruction> {
    match family {
        Family::Book => book(n),
        Family::PathSquare => path_square(n),
        Family::Fan => fan(n),
        Family::Chain => random_chain(n, Seed(seed)),
        Family::Random => random_two_tree(n, Seed(seed)),
    }
}

/// Edge lists start with an "n m" header, constructions with a lone "n".
fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.split_whitespace().count() == 2)
}

pub fn load(args: &InputArgs) -> Result<Loaded, Failure> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let (graph, construction) = if looks_like_edge_list(&text) {
            (parse_edge_list(&text)?, None)
        } else {
            let c = parse_construction(&text)?;
            (realize(&c), Some(c))
        };
        let inputs = Inputs {
            n: Some(graph.n()),
            file: Some(path.display().to_string()),
            ..Inputs::default()
        };
        return Ok(Loaded {
            graph,
            construction,
            inputs,
        });
    }
    let Some(family) = args.family else {
        return Err(Failure::usage(
            "give either --in FILE or --family NAME --n N",
        ));
    };
    let n = args.n.ok_or_else(|| Failure::usage("--family needs --n"))?;
    let c = family_construction(family, n, args.seed)?;
    let inputs = Inputs {
        n: Some(n),
        seed: family.is_seeded().then_some(args.seed),
        family: Some(family.name().to_string()),
        file: None,
    };
    Ok(Loaded {
        graph: realize(&c),
        construction: Some(c),
        inputs,
    })
}
