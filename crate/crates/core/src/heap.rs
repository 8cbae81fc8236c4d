/// Binary max-heap over items `0..n` with per-item keys that can be changed
/// in place. `pos[i]` is the slot of item `i`, or `NONE` once removed.
#[derive(Debug, Clone)]
pub(crate) struct IndexedHeap<K> {
    slots: Vec<usize>,
    pos: Vec<usize>,
    keys: Vec<Option<K>>,
}

const NONE: usize = usize::MAX;

impl<K: Ord> IndexedHeap<K> {
    pub fn from_keys(keys: Vec<K>) -> Self {
        let n = keys.len();
        let mut heap = Self {
            slots: (0..n).collect(),
            pos: (0..n).collect(),
            keys: keys.into_iter().map(Some).collect(),
        };
        for i in (0..n / 2).rev() {
            heap.sift_down(i);
        }
        heap
    }

    #[cfg(test)]
    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn contains(&self, item: usize) -> bool {
        self.pos[item] != NONE
    }

    pub fn key(&self, item: usize) -> Option<&K> {
        self.keys[item].as_ref()
    }

    pub fn peek(&self) -> Option<usize> {
        self.slots.first().copied()
    }

    /// Removes `item` and returns its key.
    pub fn remove(&mut self, item: usize) -> Option<K> {
        let at = self.pos[item];
        if at == NONE {
            return None;
        }
        let last = self.slots.len() - 1;
        self.swap(at, last);
        self.slots.pop();
        self.pos[item] = NONE;
        if at < self.slots.len() {
            self.sift_down(at);
            self.sift_up(at);
        }
        self.keys[item].take()
    }

    /// Replaces the key of a present item and restores heap order.
    pub fn update(&mut self, item: usize, key: K) {
        let at = self.pos[item];
        debug_assert!(at != NONE, "update of removed item {item}");
        let up = key > *self.keys[item].as_ref().expect("present item has a key");
        self.keys[item] = Some(key);
        if up {
            self.sift_up(at);
        } else {
            self.sift_down(at);
        }
    }

    fn less(&self, a: usize, b: usize) -> bool {
        self.keys[self.slots[a]] < self.keys[self.slots[b]]
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.slots.swap(a, b);
        self.pos[self.slots[a]] = a;
        self.pos[self.slots[b]] = b;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.less(parent, i) {
                self.swap(parent, i);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let len = self.slots.len();
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < len && self.less(best, l) {
                best = l;
            }
            if r < len && self.less(best, r) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }
}
