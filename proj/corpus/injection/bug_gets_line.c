int injection_bug_gets_line_main(int c) {
  char *buf = 0;
  char *line = gets(buf);
  system(line);
  return 0;
}
