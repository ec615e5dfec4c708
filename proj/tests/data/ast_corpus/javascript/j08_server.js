const http = require("http");

const routes = {
  "/health": (req, res) => {
    res.writeHead(200, { "Content-Type": "text/plain" });
    res.end("ok");
  },
  "/time": (req, res) => {
    res.writeHead(200, { "Content-Type": "application/json" });
    res.end(JSON.stringify({ now: Date.now() }));
  },
};

const server = http.createServer((req, res) => {
  const handler = routes[req.url];
  if (handler) {
    handler(req, res);
  } else {
    res.writeHead(404);
    res.end();
  }
});

server.listen(8080);
