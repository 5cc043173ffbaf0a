/** Trailing-edge debounce; `cancel` drops a pending call. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): { (...args: A): void; cancel(): void } {
  let timer: ReturnType<typeof setTimeout> | undefined;
  const wrapped = (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, waitMs);
  };
  wrapped.cancel = () => {
    if (timer !== undefined) clearTimeout(timer);
    timer = undefined;
  };
  return wrapped;
}

/** Last-write-wins gate for in-flight responses: a response is delivered
 *  only if no newer dispatch (or invalidate) happened meanwhile. */
export function latestResponseGate<T>() {
  let lastId = 0;
  return {
    dispatch(fired: Promise<T>, onValue: (value: T) => void, onError?: (err: unknown) => void): void {
      lastId++;
      const thisId = lastId;
      fired.then(
        (value) => {
          if (thisId === lastId) onValue(value);
        },
        (err) => {
          if (thisId === lastId && onError) onError(err);
        },
      );
    },
    invalidate(): void {
      lastId++;
    },
  };
}
