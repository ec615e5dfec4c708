function memoize(fn) {
  const cache = new Map();
  return (arg) => {
    if (cache.has(arg)) {
      return cache.get(arg);
    }
    const value = fn(arg);
    cache.set(arg, value);
    return value;
  };
}

const slowSquare = (n) => {
  let acc = 0;
  for (let i = 0; i < n; i++) acc += n;
  return acc;
};

const fastSquare = memoize(slowSquare);
