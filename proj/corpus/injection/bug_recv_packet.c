int injection_bug_recv_packet_main(int s) {
  char *msg = recv(s);
  char *cmd = msg;
  exec(cmd);
  return 0;
}
