use graph_core::json::{array, int, join, object, SchemaError};
use serde_json::Value;

use crate::{SectionCrossings, VanishingCycles};

/// `{"edges": {"e1": {"c": [..], "d1": {"l1": k, ..}, "d2": {..}}}}`. Edges
/// and sections left out have zero data; unknown ids are rejected.
pub fn parse_crossings(
    v: &Value,
    path: &str,
    edges: &[String],
    genus: usize,
    side1: &[String],
    side2: &[String],
) -> Result<(VanishingCycles, SectionCrossings), SchemaError> {
    let root = object(v, path)?;
    if let Some(k) = root.keys().find(|k| k.as_str() != "edges") {
        return Err(SchemaError::new(join(path, k), "unknown field"));
    }
    let ep = join(path, "edges");
    let map = match root.get("edges") {
        Some(x) => object(x, &ep)?.clone(),
        None => Default::default(),
    };
    let mut c = vec![Vec::new(); edges.len()];
    let mut d1 = vec![vec![0; side1.len()]; edges.len()];
    let mut d2 = vec![vec![0; side2.len()]; edges.len()];
    for (id, entry) in &map {
        let p = join(&ep, id);
        let e = edges.iter().position(|x| x == id).ok_or_else(|| SchemaError::new(&p, "unknown edge"))?;
        let o = object(entry, &p)?;
        for (k, x) in o {
            let kp = join(&p, k);
            match k.as_str() {
                "c" => {
                    let xs = array(x, &kp)?;
                    if xs.len() > genus {
                        return Err(SchemaError::new(kp, format!("at most {genus} entries (the genus)")));
                    }
                    c[e] = xs.iter().enumerate().map(|(i, y)| int(y, &format!("{kp}[{i}]"))).collect::<Result<_, _>>()?;
                }
                "d1" | "d2" => {
                    let (ids, row) = if k == "d1" { (side1, &mut d1[e]) } else { (side2, &mut d2[e]) };
                    for (l, y) in object(x, &kp)? {
                        let lp = join(&kp, l);
                        let j = ids.iter().position(|s| s == l).ok_or_else(|| SchemaError::new(&lp, "unknown section"))?;
                        row[j] = int(y, &lp)?;
                    }
                }
                _ => return Err(SchemaError::new(kp, "unknown field")),
            }
        }
    }
    let vc = VanishingCycles::new(genus, edges.to_vec(), c).map_err(|e| SchemaError::new(&ep, e.to_string()))?;
    let sc = SectionCrossings::new(side1.to_vec(), side2.to_vec(), d1, d2)
        .map_err(|e| SchemaError::new(&ep, e.to_string()))?;
    Ok((vc, sc))
}
