//! Exact minimum set cover over bitmask sets.

/// Lexicographically least cover of minimum cardinality (comparing sorted
/// index lists), or `None` if the sets do not cover `universe`.
///
/// Iterative deepening on the cover size; each depth is a depth-first search
/// over increasing set indices, so the first cover found is the lex-least of
/// that size. Branches are cut when some uncovered element has no covering
/// set beyond the current index, or when the remaining budget times the
/// largest set cannot reach the uncovered count.
pub(crate) fn minimum_cover(sets: &[u32], universe: u32) -> Option<Vec<usize>> {
    let union = sets.iter().fold(0, |a, s| a | s);
    if union & universe != universe {
        return None;
    }
    if universe == 0 {
        return Some(Vec::new());
    }
    // last_cover[e] = largest set index containing element e
    let mut last_cover = [0usize; 32];
    for (e, slot) in last_cover.iter_mut().enumerate() {
        if universe >> e & 1 == 1 {
            *slot = (0..sets.len())
                .rev()
                .find(|&k| sets[k] >> e & 1 == 1)
                .expect("universe is covered");
        }
    }
    let widest = sets
        .iter()
        .map(|s| (s & universe).count_ones())
        .max()
        .unwrap_or(0);
    let ctx = Ctx {
        sets,
        universe,
        last_cover,
        widest,
    };
    for size in 1..=sets.len() {
        let mut chosen = Vec::with_capacity(size);
        if ctx.search(0, 0, size, &mut chosen) {
            return Some(chosen);
        }
    }
    unreachable!("the union covers the universe")
}

struct Ctx<'a> {
    sets: &'a [u32],
    universe: u32,
    last_cover: [usize; 32],
    widest: u32,
}

impl Ctx<'_> {
    fn search(&self, start: usize, covered: u32, budget: usize, chosen: &mut Vec<usize>) -> bool {
        let missing = self.universe & !covered;
        if missing == 0 {
            return true;
        }
        if budget == 0 || (budget as u32) * self.widest < missing.count_ones() {
            return false;
        }
        let mut bits = missing;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            if self.last_cover[e] < start {
                return false;
            }
            bits &= bits - 1;
        }
        for k in start..self.sets.len() {
            if self.sets[k] & missing == 0 {
                continue;
            }
            chosen.push(k);
            if self.search(k + 1, covered | self.sets[k], budget - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}
