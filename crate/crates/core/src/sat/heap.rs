/// Binary max-heap of variable indices ordered by an external activity array.
#[derive(Debug, Default)]
pub(crate) struct VarHeap {
    heap: Vec<u32>,
    index: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl VarHeap {
    pub fn grow(&mut self, n: usize) {
        if self.index.len() < n {
            self.index.resize(n, ABSENT);
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.index.get(v).is_some_and(|&i| i != ABSENT)
    }

    pub fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.index[v] = self.heap.len() as u32;
        self.heap.push(v as u32);
        self.sift_up(self.heap.len() - 1, act);
    }

    /// Restores the heap after `v`'s activity increased.
    pub fn increased(&mut self, v: usize, act: &[f64]) {
        if let Some(&i) = self.index.get(v) {
            if i != ABSENT {
                self.sift_up(i as usize, act);
            }
        }
    }

    pub fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.index[top as usize] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.index[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top as usize)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if act[p as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = p;
            self.index[p as usize] = i as u32;
            i = parent;
        }
        self.heap[i] = v;
        self.index[v as usize] = i as u32;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let child = if r < n && act[self.heap[r] as usize] > act[self.heap[l] as usize] {
                r
            } else {
                l
            };
            let c = self.heap[child];
            if act[c as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = c;
            self.index[c as usize] = i as u32;
            i = child;
        }
        self.heap[i] = v;
        self.index[v as usize] = i as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pops_by_descending_activity() {
        let act = vec![0.5, 3.0, 1.0, 2.0, 0.0];
        let mut h = VarHeap::default();
        h.grow(act.len());
        for v in 0..act.len() {
            h.insert(v, &act);
        }
        let order: Vec<usize> = std::iter::from_fn(|| h.pop(&act)).collect();
        assert_eq!(order, vec![1, 3, 2, 0, 4]);
    }
}
