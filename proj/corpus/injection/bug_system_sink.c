int injection_bug_system_sink_main(int c) {
  char *cmd = input();
  system(cmd);
  return 0;
}
