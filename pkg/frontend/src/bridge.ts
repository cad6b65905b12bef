/**
 * WebSocket-to-TCP bridge.
 *
 * Browsers cannot open raw TCP sockets, so this node process sits
 * between the page and the geometry session service: each WebSocket
 * client gets its own TCP connection, text messages are framed with the
 * 4-byte length prefix on the way in, and stream frames come back out
 * as whole JSON texts.  The service itself serves one connection at a
 * time, so run one page per bridge.
 *
 *   node dist/bridge.js [--ws-port 8080] [--tcp-host 127.0.0.1] [--tcp-port 8765]
 */

import net from "node:net";
import process from "node:process";
import { WebSocketServer, type WebSocket } from "ws";
import { FrameDecoder, encodeFrame } from "./protocol.js";

export interface Bridge {
  port: number;
  close(): Promise<void>;
}

export function startBridge(
  wsPort: number,
  tcpHost: string,
  tcpPort: number,
): Promise<Bridge> {
  const wss = new WebSocketServer({ host: "127.0.0.1", port: wsPort });
  wss.on("connection", (ws: WebSocket) => {
    const tcp = net.connect(tcpPort, tcpHost);
    const decoder = new FrameDecoder();
    tcp.on("data", (chunk: Buffer) => {
      for (const frame of decoder.push(new Uint8Array(chunk))) {
        ws.send(JSON.stringify(frame));
      }
    });
    ws.on("message", (data) => {
      tcp.write(encodeFrame(JSON.parse(data.toString())));
    });
    const drop = () => {
      tcp.destroy();
      ws.close();
    };
    tcp.on("close", drop);
    tcp.on("error", drop);
    ws.on("close", () => tcp.destroy());
    ws.on("error", () => tcp.destroy());
  });
  return new Promise((resolve, reject) => {
    wss.on("error", reject);
    wss.on("listening", () => {
      const addr = wss.address();
      const port = typeof addr === "object" && addr ? addr.port : wsPort;
      resolve({
        port,
        close: () =>
          new Promise<void>((done) => {
            for (const client of wss.clients) client.terminate();
            wss.close(() => done());
          }),
      });
    });
  });
}

function cliArg(name: string, fallback: string): string {
  const i = process.argv.indexOf(name);
  return i >= 0 && process.argv[i + 1] ? process.argv[i + 1] : fallback;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("bridge.js")) {
  const wsPort = Number(cliArg("--ws-port", "8080"));
  const tcpHost = cliArg("--tcp-host", "127.0.0.1");
  const tcpPort = Number(cliArg("--tcp-port", "8765"));
  startBridge(wsPort, tcpHost, tcpPort).then((b) => {
    console.log(`bridge listening on ws://127.0.0.1:${b.port}`);
    console.log(`forwarding to tcp://${tcpHost}:${tcpPort}`);
  });
}
