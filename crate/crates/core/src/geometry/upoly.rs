use super::{parallel, Direction, DirectionSet, GeometryError, Polygon};

/// Canonical direction of every edge, in cyclic order, with multiplicity.
pub fn edge_directions(p: &Polygon) -> Vec<Direction> {
    p.edges()
        .into_iter()
        .map(|e| Direction::new(e).expect("edges of a valid polygon are nonzero"))
        .collect()
}

/// Whether every line through a vertex in a direction of `u` meets a second
/// vertex.
///
/// A positive answer forces an even vertex count of at least `2·|U|`; a
/// violation of that consequence is a bug and panics.
pub fn is_u_polygon(p: &Polygon, u: &DirectionSet) -> bool {
    let vs = p.vertices();
    let ok = vs.iter().enumerate().all(|(i, v)| {
        u.iter().all(|d| {
            vs.iter()
                .enumerate()
                .any(|(j, w)| j != i && parallel(d.rep(), &(w - v)))
        })
    });
    if ok {
        assert!(
            vs.len() % 2 == 0 && vs.len() >= 2 * u.len(),
            "internal error: U-polygon with {} vertices for {} directions",
            vs.len(),
            u.len()
        );
    }
    ok
}

/// Longest cyclic run of consecutive edges parallel to members of `u`,
/// capped at `|U|`.
pub fn u_class(p: &Polygon, u: &DirectionSet) -> Result<usize, GeometryError> {
    if !is_u_polygon(p, u) {
        return Err(GeometryError::NotAUPolygon);
    }
    let hits: Vec<bool> = edge_directions(p)
        .iter()
        .map(|e| u.contains_parallel(e))
        .collect();
    let k = hits.len();
    let run = if hits.iter().all(|&h| h) {
        k
    } else {
        // start right after a miss so runs do not wrap past the start
        let start = hits.iter().position(|&h| !h).unwrap_or(0) + 1;
        let mut best = 0;
        let mut cur = 0;
        for i in 0..k {
            if hits[(start + i) % k] {
                cur += 1;
                best = best.max(cur);
            } else {
                cur = 0;
            }
        }
        best
    };
    Ok(run.min(u.len()))
}
