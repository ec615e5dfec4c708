function findPair(grid, target) {
  let found = null;
  outer: for (let r = 0; r < grid.length; r++) {
    for (let c = 0; c < grid[r].length; c++) {
      if (grid[r][c] === target) {
        found = [r, c];
        break outer;
      }
    }
  }
  return found;
}

function countdown(n) {
  do {
    console.log(n);
    n -= 1;
  } while (n > 0);
}
