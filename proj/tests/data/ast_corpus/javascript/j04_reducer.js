const initial = { items: [], loading: false };

function reducer(state = initial, action) {
  switch (action.type) {
    case "load":
      return { ...state, loading: true };
    case "loaded":
      return { items: action.items, loading: false };
    case "remove":
      return {
        ...state,
        items: state.items.filter((it) => it.id !== action.id),
      };
    default:
      return state;
  }
}
