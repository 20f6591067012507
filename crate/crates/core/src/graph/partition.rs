use crate::error::{Error, Result};

/// Partition of the index set `0..size` into disjoint nonempty classes.
///
/// Class members are sorted at construction; class order is the caller's,
/// which the graph constructions fix deterministically (vertex order, edge
/// order, ...), so derived matrices reproduce bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    size: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Partition {
    pub fn new(size: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut class_of = vec![usize::MAX; size];
        let mut stored = Vec::with_capacity(classes.len());
        for (ci, class) in classes.into_iter().enumerate() {
            if class.is_empty() {
                return Err(Error::Partition(format!("class {ci} is empty")));
            }
            let mut sorted = class;
            sorted.sort_unstable();
            for &w in &sorted {
                if w >= size {
                    return Err(Error::Partition(format!(
                        "class {ci} references element {w} outside 0..{size}"
                    )));
                }
                if class_of[w] != usize::MAX {
                    return Err(Error::Partition(format!(
                        "element {w} appears in classes {} and {ci}",
                        class_of[w]
                    )));
                }
                class_of[w] = ci;
            }
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::Partition(format!(
                        "class {ci} repeats element {}",
                        w[0]
                    )));
                }
            }
            stored.push(sorted);
        }
        if let Some(missing) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Partition(format!(
                "element {missing} is not covered by any class"
            )));
        }
        Ok(Partition {
            size,
            classes: stored,
            class_of,
        })
    }

    pub fn singletons(size: usize) -> Self {
        Partition {
            size,
            classes: (0..size).map(|i| vec![i]).collect(),
            class_of: (0..size).collect(),
        }
    }

    pub fn whole(size: usize) -> Result<Self> {
        Partition::new(size, vec![(0..size).collect()])
    }

    /// Group indices by key; classes appear in ascending key order.
    pub fn from_keys<K: Ord + Clone>(keys: &[K]) -> Self {
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match classes.last_mut() {
                Some(last) if keys[*last.first().unwrap()] == keys[i] => last.push(i),
                _ => classes.push(vec![i]),
            }
        }
        Partition::new(keys.len(), classes).expect("grouping by key is a valid partition")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Classes as sets, ignoring class order — used for isomorphism checks.
    pub fn classes_as_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = self.classes.clone();
        sets.sort();
        sets
    }
}
