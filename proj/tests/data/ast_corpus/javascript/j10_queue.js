class PriorityQueue {
  #heap = [];

  get size() {
    return this.#heap.length;
  }

  push(item, priority) {
    this.#heap.push({ item, priority });
    let i = this.#heap.length - 1;
    while (i > 0) {
      const parent = (i - 1) >> 1;
      if (this.#heap[parent].priority <= this.#heap[i].priority) break;
      [this.#heap[parent], this.#heap[i]] = [this.#heap[i], this.#heap[parent]];
      i = parent;
    }
  }

  pop() {
    const top = this.#heap[0];
    const last = this.#heap.pop();
    if (this.#heap.length > 0) {
      this.#heap[0] = last;
      this.#sink(0);
    }
    return top && top.item;
  }

  #sink(i) {
    const n = this.#heap.length;
    for (;;) {
      let m = i;
      const l = 2 * i + 1;
      const r = l + 1;
      if (l < n && this.#heap[l].priority < this.#heap[m].priority) m = l;
      if (r < n && this.#heap[r].priority < this.#heap[m].priority) m = r;
      if (m === i) return;
      [this.#heap[m], this.#heap[i]] = [this.#heap[i], this.#heap[m]];
      i = m;
    }
  }
}
